//! Dyadic rationals, the parity sets `S` and `sigma(S)`, membership in the
//! Jones subgroup, and scans for elements fixing the vacuum.

mod dyadic;
mod membership;
mod scan;

use thiserror::Error;

pub use dyadic::{apply, in_s, in_sigma_s, sigma_dyadic, Dyadic, PrefixMap};
pub use membership::{
    element_c, element_d, jones_membership, sigma_jones_membership, stabilizes, MembershipMethod, ParitySet,
};
pub use scan::{scan_elements, stabilizer_scan, stabilizer_scan_with, ScanOptions, ScanRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("not a dyadic rational in (0, 1)")]
    NotInInterval,
    #[error("cannot parse dyadic `{0}`")]
    BadDyadic(String),
    #[error("trees have different leaf counts")]
    LeafMismatch,
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
