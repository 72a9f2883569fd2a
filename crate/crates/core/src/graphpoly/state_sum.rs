//! Expansion of the chromatic-point pairing over edge subsets of `Gamma(g)`.
//!
//! Each caret of either tree is an edge of `Gamma(g)`. Giving a caret the
//! second vertex diagram puts its edge into `S`; the first diagram leaves
//! it out. At the chromatic point the closed diagram for `S` weighs
//! `(-1)^|S| t^((loop(S) + n - 1 - |S|)/2) / (t-1)^(n-1)`.

use super::{thompson_graph, GraphError, Multigraph};
use crate::forests::{BinaryTree, ThompsonElement};
use crate::scalars::{IntPolynomial, Scalar};
use crate::tl::line::{glued_loops, insert_cup, partners, STRAND};

/// Largest `|E(Gamma)|` handled by the subset expansion.
pub const STATE_SUM_MAX_EDGES: usize = 24;

/// Partner tables of the `2^(n-1)` diagrams of a tree, indexed by the mask
/// of carets (in preorder) that take the second vertex diagram.
fn tree_states(t: &BinaryTree) -> Vec<Vec<usize>> {
    let carets = t.carets();
    let len = 2 * t.n_leaves();
    (0u64..1 << carets.len())
        .map(|mask| {
            let mut w = STRAND;
            for (j, c) in carets.iter().enumerate() {
                let p = 2 * c.first;
                w = if mask >> j & 1 == 1 { insert_cup(w, p + 1) } else { insert_cup(w, p + 2) };
            }
            partners(w, len)
        })
        .collect()
}

fn check_size(g: &ThompsonElement) -> Result<(), GraphError> {
    let edges = 2 * (g.n_leaves() - 1);
    if edges > STATE_SUM_MAX_EDGES {
        return Err(GraphError::TooManyEdges { edges, max: STATE_SUM_MAX_EDGES });
    }
    Ok(())
}

/// `N(t) = sum over S of (-1)^|S| t^((loop(S) + n - 1 - |S|)/2)`, so that the
/// vacuum coefficient at the chromatic point is `N(t)/(t-1)^(n-1)`.
pub fn state_sum_numerator(g: &ThompsonElement) -> Result<IntPolynomial, GraphError> {
    check_size(g)?;
    let n = g.n_leaves();
    let plus = tree_states(g.plus());
    let minus = tree_states(g.minus());
    let mut counts = vec![0i64; 2 * n];
    for (mp, up) in plus.iter().enumerate() {
        for (mm, lo) in minus.iter().enumerate() {
            let s = (mp.count_ones() + mm.count_ones()) as usize;
            let e = glued_loops(up, lo) + n - 1 - s;
            debug_assert!(e % 2 == 0, "odd exponent");
            counts[e / 2] += if s % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(IntPolynomial::from_i64s(&counts))
}

pub fn vacuum_via_state_sum<S: Scalar>(g: &ThompsonElement, t: &S) -> Result<S, GraphError> {
    let tm1 = t.clone() - S::one();
    if t.is_zero() || tm1.is_zero() {
        return Err(GraphError::DegenerateParameter);
    }
    let num = state_sum_numerator(g)?.eval(t);
    Ok(num / tm1.pow(g.n_leaves() as u32 - 1))
}

/// Per-subset data of the expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetState {
    pub size: usize,
    pub loops: usize,
    /// Components of the spanning subgraph `(V, S)`.
    pub components: usize,
    /// Faces of `(V, S)` drawn with vertices on a line, range-tree edges
    /// as arcs above and domain-tree edges as arcs below.
    pub faces: usize,
}

impl SubsetState {
    /// `k + F = loop + 2` and `n - |S| + F = 1 + k`.
    pub fn euler_holds(&self, n: usize) -> bool {
        self.components + self.faces == self.loops + 2 && n + self.faces == 1 + self.components + self.size
    }
}

/// Every subset state of `g`, in the order (range mask, domain mask).
pub fn subset_states(g: &ThompsonElement) -> Result<Vec<SubsetState>, GraphError> {
    check_size(g)?;
    let tg = thompson_graph(g);
    let n = g.n_leaves();
    let plus = tree_states(g.plus());
    let minus = tree_states(g.minus());
    let k = n - 1;
    let mut out = Vec::with_capacity(plus.len() * minus.len());
    for (mp, up) in plus.iter().enumerate() {
        for (mm, lo) in minus.iter().enumerate() {
            let above: Vec<_> = (0..k).filter(|j| mp >> j & 1 == 1).map(|j| tg.plus_edges[j]).collect();
            let below: Vec<_> = (0..k).filter(|j| mm >> j & 1 == 1).map(|j| tg.minus_edges[j]).collect();
            let sub = Multigraph::new(n, above.iter().chain(&below).copied()).expect("leaf indices");
            out.push(SubsetState {
                size: above.len() + below.len(),
                loops: glued_loops(up, lo),
                components: sub.component_count(),
                faces: line_drawing_faces(n, &above, &below),
            });
        }
    }
    Ok(out)
}

/// Faces of the plane graph on vertices `0..n` placed on a line, with
/// `above` drawn as upper semicircles and `below` as lower ones.
pub fn line_drawing_faces(n: usize, above: &[(usize, usize)], below: &[(usize, usize)]) -> usize {
    // darts 2e and 2e+1 run u->v and v->u for edge e = (u, v), u < v
    let edges: Vec<(usize, usize, bool)> =
        above.iter().map(|&(u, v)| (u, v, true)).chain(below.iter().map(|&(u, v)| (u, v, false))).collect();
    // counter-clockwise order of darts leaving each vertex, keyed by
    // (sector, rank within sector); sectors run NE, NW, SW, SE
    let mut rot: Vec<Vec<((u8, i64), usize)>> = vec![Vec::new(); n];
    for (e, &(u, v, up)) in edges.iter().enumerate() {
        let r = (v - u) as i64;
        // leaving u towards the right, leaving v towards the left
        let (ku, kv) = if up { ((0, r), (1, -r)) } else { ((3, -r), (2, r)) };
        rot[u].push((ku, 2 * e));
        rot[v].push((kv, 2 * e + 1));
    }
    let mut next_ccw = vec![0usize; 2 * edges.len()];
    for darts in &mut rot {
        darts.sort();
        for i in 0..darts.len() {
            next_ccw[darts[i].1] = darts[(i + 1) % darts.len()].1;
        }
    }
    // face successor of dart d: at the head of d, the dart after its reverse
    let mut seen = vec![false; 2 * edges.len()];
    let mut orbits = 0;
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = next_ccw[d ^ 1];
        }
    }
    let isolated = rot.iter().filter(|r| r.is_empty()).count();
    let components = Multigraph::new(n, edges.iter().map(|&(u, v, _)| (u, v))).expect("in range").component_count();
    orbits + isolated + 1 - components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forests::enumerate_elements;
    use crate::graphpoly::chromatic;
    use crate::scalars::Quadratic;

    #[test]
    fn x0_numerator() {
        let g = ThompsonElement::x0();
        // Gamma(t) = t(t-1)(t-2) = t N(t)
        assert_eq!(state_sum_numerator(&g).unwrap(), IntPolynomial::from_i64s(&[2, -3, 1]));
        assert_eq!(vacuum_via_state_sum(&g, &Quadratic::integer(4)).unwrap(), Quadratic::ratio(2, 3));
        assert_eq!(vacuum_via_state_sum(&ThompsonElement::identity(), &Quadratic::integer(4)).unwrap(), Quadratic::integer(1));
    }

    #[test]
    fn numerator_times_t_is_chromatic() {
        for g in enumerate_elements(6) {
            let p = chromatic(&thompson_graph(&g).graph);
            assert_eq!(state_sum_numerator(&g).unwrap() * IntPolynomial::t(), p, "{g}");
        }
    }

    #[test]
    fn euler_relations_per_subset() {
        for g in enumerate_elements(5) {
            let n = g.n_leaves();
            for s in subset_states(&g).unwrap() {
                assert!(s.euler_holds(n), "{g}: {s:?}");
            }
        }
    }

    #[test]
    fn faces_of_simple_drawings() {
        assert_eq!(line_drawing_faces(3, &[], &[]), 1);
        // a doubled edge, one copy on each side, bounds one extra face
        assert_eq!(line_drawing_faces(2, &[(0, 1)], &[(0, 1)]), 2);
        // nested upper arcs and a lower arc closing the triangle
        assert_eq!(line_drawing_faces(3, &[(0, 1), (0, 2)], &[(1, 2)]), 2);
        assert_eq!(line_drawing_faces(3, &[(0, 1), (0, 2)], &[(0, 1), (1, 2)]), 3);
    }
}
