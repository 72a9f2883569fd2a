//! The Thompson graph of an element and its chromatic and Tutte polynomials.

mod chromatic;
mod formulas;
mod graph;
mod state_sum;
mod tutte;

use thiserror::Error;

pub use chromatic::{chromatic, chromatic_whitney, ChromaticCache, MAX_VERTICES, WHITNEY_MAX_EDGES};
pub use formulas::{
    compare_with_tree_bound, cone_identity_check, inequality_check, inequality_compare, tree_bound, tutte_variables,
    vacuum_via_chromatic, vacuum_via_tutte,
};
pub use graph::{thompson_graph, Multigraph, ThompsonGraph};
pub use state_sum::{
    line_drawing_faces, state_sum_numerator, subset_states, vacuum_via_state_sum, SubsetState, STATE_SUM_MAX_EDGES,
};
pub use tutte::tutte;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{edges} edges exceed the subset expansion limit of {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parameter makes the formula singular")]
    DegenerateParameter,
    #[error("need between 1 and 5 distinct attachment vertices, got {0}")]
    BadAttachment(usize),
}
