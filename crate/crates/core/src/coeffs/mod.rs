//! Vacuum matrix coefficients, their closed forms, symmetries and the decay
//! of `phi(x0^k)`.

mod decay;
mod evaluator;
mod symmetry;
mod vacuum;

use thiserror::Error;

use crate::graphpoly::GraphError;

pub use decay::{decay_sequence, spectral_check, DecayMatrix, DecaySequence, EllipsePoint};
pub use evaluator::{is_chromatic, Backend, VacuumEvaluator};
pub use symmetry::{kauffman_spec, kauffman_vacuum, symmetry_suite, symmetry_suite_with, SymmetryCheck, SymmetryReport};
pub use vacuum::{check_normalized, chromatic_laurent, chromatic_vacuum, closed_forms_x0, vacuum, vacuum_unchecked};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("parameters are not normalized (residual {0:e})")]
    NotNormalized(f64),
    #[error("degenerate parameters: {0}")]
    Degenerate(&'static str),
    #[error("parameters are not the chromatic point")]
    NotChromatic,
    #[error("unknown backend `{0}`")]
    UnknownBackend(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
