use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::forests::{ElementEnumerator, ThompsonElement};
use crate::graphpoly::{thompson_graph, tree_bound, ChromaticCache, GraphError};
use crate::scalars::{IntPolynomial, Scalar, DEFAULT_TOLERANCE};

/// An element fixing the vacuum at parameter `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord<S> {
    pub element: ThompsonElement,
    pub leaves: usize,
    /// Edges of `Gamma(g)`, labelled from 1.
    pub edges: Vec<(usize, usize)>,
    pub gamma_t: S,
}

pub struct ScanOptions<'a> {
    /// Worker threads; `None` uses rayon's global pool.
    pub workers: Option<usize>,
    pub tolerance: f64,
    /// Called with `(done, total)` candidate counts as chunks finish.
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
}

impl Default for ScanOptions<'_> {
    fn default() -> Self {
        ScanOptions { workers: None, tolerance: DEFAULT_TOLERANCE, progress: None }
    }
}

/// Visit every nontrivial reduced element with at most `max_leaves`
/// leaves, in enumeration order, keeping the `Some` results of `f`. The
/// output does not depend on the number of workers.
pub fn scan_elements<T, F>(max_leaves: usize, workers: Option<usize>, progress: Option<&(dyn Fn(usize, usize) + Sync)>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChromaticCache, &ThompsonElement) -> Option<T> + Sync,
{
    let en = ElementEnumerator::new(max_leaves);
    let total = en.candidates();
    let threads = workers.unwrap_or_else(rayon::current_num_threads).max(1);
    let chunks = en.chunks(threads * 16);
    let done = AtomicUsize::new(0);
    let run = || {
        chunks
            .par_iter()
            .map_init(ChromaticCache::default, |cache, range| {
                let out: Vec<T> = en.range(range.clone()).filter_map(|p| f(cache, &p.element())).collect();
                let d = done.fetch_add(range.len(), Ordering::Relaxed) + range.len();
                if let Some(cb) = progress {
                    cb(d, total);
                }
                out
            })
            .collect::<Vec<_>>()
    };
    let parts = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(run),
        None => run(),
    };
    parts.into_iter().flatten().collect()
}

fn fixes_vacuum<S: Scalar>(p: &IntPolynomial, n: usize, t: &S, tol: f64) -> Option<S> {
    let value = p.eval(t);
    let bound = tree_bound(n).eval(t);
    let scale = if S::EXACT { 0.0 } else { tol * bound.modulus().max(1.0) };
    value.approx_eq(&bound, scale).then_some(value)
}

/// Nontrivial elements with at most `max_leaves` leaves whose Thompson
/// graph satisfies `Gamma(t) = t(t-1)^(n-1)`, i.e. `phi(g) = 1` at the
/// chromatic point of `t`.
pub fn stabilizer_scan<S: Scalar>(t: &S, max_leaves: usize) -> Result<Vec<ScanRecord<S>>, GraphError> {
    stabilizer_scan_with(t, max_leaves, &ScanOptions::default())
}

pub fn stabilizer_scan_with<S: Scalar>(t: &S, max_leaves: usize, opts: &ScanOptions<'_>) -> Result<Vec<ScanRecord<S>>, GraphError> {
    if t.is_zero() || (t.clone() - S::one()).is_zero() {
        return Err(GraphError::DegenerateParameter);
    }
    Ok(scan_elements(max_leaves, opts.workers, opts.progress, |cache, g| {
        let tg = thompson_graph(g);
        let p = cache.chromatic(&tg.graph);
        fixes_vacuum(&p, g.n_leaves(), t, opts.tolerance).map(|gamma_t| ScanRecord {
            element: g.clone(),
            leaves: g.n_leaves(),
            edges: tg.graph.edge_list(),
            gamma_t,
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphpoly::vacuum_via_chromatic;
    use crate::scalars::Quadratic;
    use crate::subgroups::{jones_membership, MembershipMethod};

    #[test]
    fn t_two_is_the_jones_subgroup() {
        let found = stabilizer_scan(&Quadratic::integer(2), 6).unwrap();
        assert!(!found.is_empty());
        for r in &found {
            assert!(MembershipMethod::ALL.iter().all(|&m| jones_membership(&r.element, m)));
        }
        let all = scan_elements(6, Some(1), None, |_, g| Some(g.clone()));
        let members = all.iter().filter(|g| jones_membership(g, MembershipMethod::Bipartite)).count();
        assert_eq!(members, found.len());
    }

    #[test]
    fn other_parameters_are_trivial_at_small_depth() {
        let golden_plus_two = Quadratic::golden() + Quadratic::integer(2);
        for t in [Quadratic::integer(3), Quadratic::integer(4), golden_plus_two, Quadratic::integer(5)] {
            assert!(stabilizer_scan(&t, 6).unwrap().is_empty());
        }
        assert!(stabilizer_scan(&4.7f64, 6).unwrap().is_empty());
        assert!(stabilizer_scan(&Quadratic::integer(1), 6).is_err());
    }

    #[test]
    fn scan_matches_vacuum_and_workers_do_not_matter() {
        let t = Quadratic::integer(2);
        let one = scan_elements(5, Some(1), None, |_, g| Some(g.clone()));
        let three = scan_elements(5, Some(3), None, |_, g| Some(g.clone()));
        assert_eq!(one, three);
        let found: Vec<_> = stabilizer_scan(&t, 5).unwrap().into_iter().map(|r| r.element).collect();
        let direct: Vec<_> = one.into_iter().filter(|g| vacuum_via_chromatic(g, &t).unwrap() == Quadratic::integer(1)).collect();
        assert_eq!(found, direct);
    }
}
