//! Planar binary trees and forests, and Thompson's group F as the group of
//! fractions of the forest category.

mod element;
mod enumerate;
mod forest;
mod tree;

use thiserror::Error;

pub use element::ThompsonElement;
pub use enumerate::{enumerate_elements, ElementEnumerator, EnumeratedPair, TreeLevel};
pub use forest::{common_multiple, compose, quotient, Forest};
pub use tree::{BinaryTree, BitWord, Caret};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("`{0}` is not a word over {{0,1}}")]
    BadBits(String),
    #[error("`{0}` is not the preorder encoding of a binary tree")]
    BadPreorder(String),
    #[error("leaf addresses do not form a complete prefix code")]
    NotPrefixCode,
    #[error("forest has {roots} roots but the lower forest has {leaves} leaves")]
    CountMismatch { roots: usize, leaves: usize },
    #[error("a forest needs at least one tree")]
    EmptyForest,
    #[error("trees have {0} and {1} leaves")]
    LeafMismatch(usize, usize),
    #[error("cannot parse group element `{0}`")]
    BadWord(String),
}
