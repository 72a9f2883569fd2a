//! Chromatic polynomials by memoized deletion-contraction on simple graphs.
//!
//! Parallel edges do not change the chromatic polynomial, so the recursion
//! runs on adjacency bitmasks after collapsing them. Coefficients are
//! computed with checked `i128` arithmetic and recomputed with big integers
//! on overflow.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};
use rustc_hash::FxHashMap;

use super::{GraphError, Multigraph};
use crate::scalars::IntPolynomial;

/// Largest vertex count handled by the bitmask recursion.
pub const MAX_VERTICES: usize = 64;

/// Default number of memo entries kept before the cache is flushed.
pub const DEFAULT_CACHE_CAP: usize = 1 << 20;

trait Coef: Clone + Zero + One {
    fn from_i64(n: i64) -> Self;
    fn add_c(&self, o: &Self) -> Option<Self>;
    fn sub_c(&self, o: &Self) -> Option<Self>;
    fn mul_c(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn from_i64(n: i64) -> Self {
        n as i128
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Poly<C> = Vec<C>;

fn p_add<C: Coef>(x: &[C], y: &[C]) -> Option<Poly<C>> {
    let mut out = Vec::with_capacity(x.len().max(y.len()));
    for i in 0..x.len().max(y.len()) {
        out.push(match (x.get(i), y.get(i)) {
            (Some(a), Some(b)) => a.add_c(b)?,
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => unreachable!(),
        });
    }
    Some(out)
}

/// `(t - c) * x`
fn p_mul_linear<C: Coef>(x: &[C], c: i64) -> Option<Poly<C>> {
    let c = C::from_i64(c);
    let mut out = vec![C::zero(); x.len() + 1];
    for (i, a) in x.iter().enumerate() {
        out[i + 1] = out[i + 1].add_c(a)?;
        out[i] = out[i].sub_c(&a.mul_c(&c)?)?;
    }
    Some(out)
}

fn p_mul<C: Coef>(x: &[C], y: &[C]) -> Option<Poly<C>> {
    let mut out = vec![C::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            out[i + j] = out[i + j].add_c(&a.mul_c(b)?)?;
        }
    }
    Some(out)
}

fn monomial<C: Coef>(k: usize) -> Poly<C> {
    let mut v = vec![C::zero(); k + 1];
    v[k] = C::one();
    v
}

/// Simple graph as adjacency masks over vertices `0..len`.
type Adj = Vec<u64>;

fn remove_vertex(adj: &[u64], v: usize) -> Adj {
    let low = (1u64 << v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, &m)| (m & low) | ((m >> (v + 1)) << v))
        .collect()
}

fn with_edge(adj: &[u64], u: usize, w: usize) -> Adj {
    let mut a = adj.to_vec();
    a[u] |= 1 << w;
    a[w] |= 1 << u;
    a
}

/// Merge `w` into `u`.
fn merge(adj: &[u64], u: usize, w: usize) -> Adj {
    let mut a = adj.to_vec();
    let nb = a[w] & !(1 << u);
    a[u] = (a[u] | nb) & !(1 << w);
    for x in 0..a.len() {
        if nb >> x & 1 == 1 {
            a[x] |= 1 << u;
        }
    }
    remove_vertex(&a, w)
}

fn sub_graph(adj: &[u64], keep: u64) -> Adj {
    let idx: Vec<usize> = (0..adj.len()).filter(|&i| keep >> i & 1 == 1).collect();
    idx.iter()
        .map(|&i| idx.iter().enumerate().filter(|&(_, &j)| adj[i] >> j & 1 == 1).fold(0, |m, (k, _)| m | 1 << k))
        .collect()
}

fn component_of_zero(adj: &[u64]) -> u64 {
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

struct Solver<C> {
    memo: FxHashMap<Adj, Poly<C>>,
    cap: usize,
}

impl<C: Coef> Solver<C> {
    fn solve(&mut self, adj: Adj) -> Option<Poly<C>> {
        let k = adj.len();
        let m: u32 = adj.iter().map(|x| x.count_ones()).sum::<u32>() / 2;
        if m == 0 {
            return Some(monomial(k));
        }
        let full = k * (k - 1) / 2;
        if m as usize == full {
            let mut p = vec![C::one()];
            for c in 0..k as i64 {
                p = p_mul_linear(&p, c)?;
            }
            return Some(p);
        }
        if let Some(p) = self.memo.get(&adj) {
            return Some(p.clone());
        }
        let p = self.solve_uncached(&adj, m as usize, full)?;
        if self.memo.len() >= self.cap {
            self.memo.clear();
        }
        self.memo.insert(adj, p.clone());
        Some(p)
    }

    fn solve_uncached(&mut self, adj: &Adj, m: usize, full: usize) -> Option<Poly<C>> {
        let k = adj.len();
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let comp = component_of_zero(adj);
        if comp != all {
            let a = self.solve(sub_graph(adj, comp))?;
            let b = self.solve(sub_graph(adj, all & !comp))?;
            return p_mul(&a, &b);
        }
        let (v, deg) = (0..k).map(|v| (v, adj[v].count_ones())).min_by_key(|&(_, d)| d).expect("nonempty");
        match deg {
            1 => return p_mul_linear(&self.solve(remove_vertex(adj, v))?, 1),
            2 => {
                let u = adj[v].trailing_zeros() as usize;
                let w = 63 - adj[v].leading_zeros() as usize;
                let h = remove_vertex(adj, v);
                let (u, w) = (u - (u > v) as usize, w - (w > v) as usize);
                if h[u] >> w & 1 == 1 {
                    return p_mul_linear(&self.solve(h)?, 2);
                }
                let joined = self.solve(with_edge(&h, u, w))?;
                let merged = self.solve(merge(&h, u, w))?;
                return p_add(&p_mul_linear(&joined, 2)?, &p_mul_linear(&merged, 1)?);
            }
            _ => {}
        }
        if 2 * m > full {
            // dense: P(G) = P(G + e) + P(G / e) for a missing edge e
            let u = (0..k).find(|&u| adj[u].count_ones() as usize + 1 < k).expect("not complete");
            let missing = all & !adj[u] & !(1 << u);
            let w = missing.trailing_zeros() as usize;
            let a = self.solve(with_edge(adj, u, w))?;
            let b = self.solve(merge(adj, u, w))?;
            return p_add(&a, &b);
        }
        // P(G) = P(G - e) - P(G / e) on an edge at the minimum degree vertex,
        // towards its highest degree neighbour
        let u = (0..k).filter(|&u| adj[v] >> u & 1 == 1).max_by_key(|&u| adj[u].count_ones()).expect("deg > 0");
        let mut del = adj.clone();
        del[u] &= !(1 << v);
        del[v] &= !(1 << u);
        let a = self.solve(del)?;
        let b = self.solve(merge(adj, u, v))?;
        let neg: Poly<C> = b.iter().map(|c| C::zero().sub_c(c)).collect::<Option<_>>()?;
        p_add(&a, &neg)
    }
}

/// Memo tables for [`ChromaticCache::chromatic`]; keys are labelled simple
/// graphs, so the cache pays off across graphs sharing subgraphs.
pub struct ChromaticCache {
    small: Solver<i128>,
    big: Solver<BigInt>,
}

impl Default for ChromaticCache {
    fn default() -> Self {
        Self::with_capacity(DEFAULT_CACHE_CAP)
    }
}

impl ChromaticCache {
    pub fn with_capacity(cap: usize) -> Self {
        ChromaticCache {
            small: Solver { memo: FxHashMap::default(), cap },
            big: Solver { memo: FxHashMap::default(), cap },
        }
    }

    pub fn len(&self) -> usize {
        self.small.memo.len() + self.big.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Chromatic polynomial of `g`. Panics if `g` has more than
    /// [`MAX_VERTICES`] vertices.
    pub fn chromatic(&mut self, g: &Multigraph) -> IntPolynomial {
        if g.loop_count() > 0 {
            return IntPolynomial::zero();
        }
        let adj = bitmask(g);
        if let Some(p) = self.small.solve(adj.clone()) {
            return IntPolynomial::new(p.iter().map(Coef::to_big).collect());
        }
        let p = self.big.solve(adj).expect("big integers do not overflow");
        IntPolynomial::new(p)
    }
}

fn bitmask(g: &Multigraph) -> Adj {
    assert!(g.vertex_count() <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
    let mut adj = vec![0u64; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

thread_local! {
    static CACHE: RefCell<ChromaticCache> = RefCell::new(ChromaticCache::default());
}

/// Chromatic polynomial, using a per-thread memo table.
pub fn chromatic(g: &Multigraph) -> IntPolynomial {
    CACHE.with(|c| c.borrow_mut().chromatic(g))
}

/// Largest edge count accepted by [`chromatic_whitney`].
pub const WHITNEY_MAX_EDGES: usize = 24;

/// `sum over S of (-1)^|S| t^k(S)`, `k(S)` the number of components of the
/// spanning subgraph with edge set `S`.
pub fn chromatic_whitney(g: &Multigraph) -> Result<IntPolynomial, GraphError> {
    let m = g.edge_count();
    if m > WHITNEY_MAX_EDGES {
        return Err(GraphError::TooManyEdges { edges: m, max: WHITNEY_MAX_EDGES });
    }
    let mut counts = vec![0i64; g.vertex_count() + 1];
    for mask in 0u64..1 << m {
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        counts[g.components_of(mask)] += sign;
    }
    Ok(IntPolynomial::from_i64s(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphpoly::thompson_graph;
    use crate::forests::ThompsonElement;
    use crate::scalars::Quadratic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn falling(k: i64) -> IntPolynomial {
        (0..k).fold(IntPolynomial::one(), |p, c| p * IntPolynomial::linear(c))
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Multigraph {
        Multigraph::new(n, (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))).unwrap()
    }

    #[test]
    fn small_families() {
        let t = IntPolynomial::t();
        for n in 1..7 {
            let tree = t.clone() * IntPolynomial::linear(1).pow(n as u32 - 1);
            assert_eq!(chromatic(&Multigraph::path(n)), tree);
            assert_eq!(chromatic(&Multigraph::complete(n)), falling(n as i64));
        }
        assert_eq!(chromatic(&Multigraph::empty(3)), t.pow(3));
        assert_eq!(chromatic(&Multigraph::new(2, [(0, 0)]).unwrap()), IntPolynomial::zero());
        // 4-cycle: (t-1)^4 + (t-1)
        let c4 = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let s = IntPolynomial::linear(1);
        assert_eq!(chromatic(&c4), s.pow(4) + s);
    }

    #[test]
    fn x0_anchor() {
        let g = thompson_graph(&ThompsonElement::x0()).graph;
        assert_eq!(chromatic(&g), falling(3));
        assert_eq!(chromatic_whitney(&g).unwrap(), falling(3));
        assert_eq!(chromatic_whitney(&Multigraph::path(2)).unwrap(), IntPolynomial::from_i64s(&[0, -1, 1]));
    }

    #[test]
    fn k4_is_negative_at_golden_square() {
        let tau = Quadratic::golden();
        let t = tau.clone() * tau;
        let v = chromatic(&Multigraph::complete(4)).eval(&t);
        assert!(v < Quadratic::integer(0));
        let expect = t.clone() * (t.clone() - Quadratic::integer(1)) * (t.clone() - Quadratic::integer(2)) * (t - Quadratic::integer(3));
        assert_eq!(v, expect);
    }

    #[test]
    fn deletion_contraction_matches_whitney() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..8);
            let m = rng.gen_range(0..13);
            let g = random_graph(&mut rng, n, m);
            assert_eq!(chromatic(&g), chromatic_whitney(&g).unwrap(), "{g}");
            assert_eq!(chromatic(&g), chromatic(&g.simplify()));
        }
    }

    #[test]
    fn disconnected_and_dense() {
        let g = Multigraph::complete(5).disjoint_union(&Multigraph::path(3));
        assert_eq!(chromatic(&g), falling(5) * chromatic(&Multigraph::path(3)));
        let mut k6_minus = Multigraph::complete(6);
        k6_minus = k6_minus.delete_edge(0);
        assert_eq!(chromatic(&k6_minus), chromatic_whitney(&k6_minus).unwrap());
    }

    #[test]
    fn big_integer_fallback() {
        // K_40 overflows i128 in its falling factorial coefficients
        let g = Multigraph::complete(40);
        let p = chromatic(&g);
        assert_eq!(p, falling(40));
        assert!(chromatic_whitney(&g).is_err());
    }
}
