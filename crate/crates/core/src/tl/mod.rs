//! The Temperley-Lieb diagram calculus and the functor from binary forests
//! to TL morphisms.

mod diagram;
mod jones;
pub mod line;
mod morphism;

use thiserror::Error;

pub use diagram::TLDiagram;
pub use jones::{
    normalization_value, pairing, phi_forest, phi_tree, phi_tree_ring, vertex_morphism, RSpec,
};
pub use morphism::TLMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("a diagram with {0} bottom and {1} top points cannot be a perfect matching")]
    OddBoundary(usize, usize),
    #[error("pairing is not a perfect matching")]
    NotMatching,
    #[error("pairing is not planar")]
    Crossing,
    #[error("cannot stack: upper diagram has {upper_bottom} bottom points, lower has {lower_top} top points")]
    CountMismatch { upper_bottom: usize, lower_top: usize },
    #[error("the chromatic point needs delta not in {{0, 1, -1}}")]
    DegenerateLoop,
}

/// Compose two morphisms; convenience alias of [`TLMorphism::compose`].
pub fn tl_compose<R: crate::scalars::Ring>(
    upper: &TLMorphism<R>,
    lower: &TLMorphism<R>,
    delta: &R,
) -> Result<TLMorphism<R>, TlError> {
    upper.compose(lower, delta)
}

pub fn tl_dagger<R: crate::scalars::Ring>(m: &TLMorphism<R>) -> TLMorphism<R> {
    m.dagger()
}
