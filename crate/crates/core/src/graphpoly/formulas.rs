use std::cmp::Ordering;

use super::{chromatic, thompson_graph, tutte, GraphError, Multigraph};
use crate::forests::ThompsonElement;
use crate::scalars::{IntPolynomial, RealScalar, Scalar};
use crate::tl::RSpec;

/// `t(t-1)^(n-1)`, the chromatic polynomial of any tree on `n` vertices.
pub fn tree_bound(n: usize) -> IntPolynomial {
    IntPolynomial::t() * IntPolynomial::linear(1).pow(n as u32 - 1)
}

/// `Gamma(g)(t) / (t (t-1)^(n-1))`.
pub fn vacuum_via_chromatic<S: Scalar>(g: &ThompsonElement, t: &S) -> Result<S, GraphError> {
    let tm1 = t.clone() - S::one();
    if t.is_zero() || tm1.is_zero() {
        return Err(GraphError::DegenerateParameter);
    }
    let p = chromatic(&thompson_graph(g).graph);
    Ok(p.eval(t) / (t.clone() * tm1.pow(g.n_leaves() as u32 - 1)))
}

/// The Tutte variables `x = 1/(ab) - delta b/a - 1`, `y = delta b/a + 1`
/// of the physical parameters.
pub fn tutte_variables<S: Scalar>(r: &RSpec<S>) -> Result<(S, S), GraphError> {
    let ab = r.ab();
    if ab.is_zero() {
        return Err(GraphError::DegenerateParameter);
    }
    let ratio = r.b.clone() / r.a.clone();
    let y = r.delta.clone() * ratio + S::one();
    let x = ab.inv().map_err(|_| GraphError::DegenerateParameter)? - y.clone();
    Ok((x, y))
}

/// `T_Gamma(x, y) / (x + y)^(n-1)` at the Tutte variables of `r`.
pub fn vacuum_via_tutte<S: Scalar>(g: &ThompsonElement, r: &RSpec<S>) -> Result<S, GraphError> {
    let (x, y) = tutte_variables(r)?;
    let s = x.clone() + y.clone();
    if s.is_zero() {
        return Err(GraphError::DegenerateParameter);
    }
    let t = tutte(&thompson_graph(g).graph)?;
    Ok(t.eval(&x, &y) / s.pow(g.n_leaves() as u32 - 1))
}

/// Compare `chromatic(cone(lambda, attach))(t)` with
/// `(t-k) lambda(t) + sum over A of (-1)^|A| (lambda/A)(t)`, `A` ranging over
/// subsets of `attach` with at least two elements.
pub fn cone_identity_check<S: Scalar>(lambda: &Multigraph, attach: &[usize], t: &S) -> Result<bool, GraphError> {
    let k = attach.len();
    if !(1..=5).contains(&k) {
        return Err(GraphError::BadAttachment(k));
    }
    let mut sorted = attach.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Err(GraphError::BadAttachment(k));
    }
    let lhs = chromatic(&lambda.cone(attach)?).eval(t);
    let mut rhs = (t.clone() - S::from_i64(k as i64)) * chromatic(lambda).eval(t);
    for mask in 0u32..1 << k {
        if mask.count_ones() < 2 {
            continue;
        }
        let set: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| attach[i]).collect();
        let term = chromatic(&lambda.identify(&set)).eval(t);
        rhs = if mask.count_ones() % 2 == 0 { rhs + term } else { rhs - term };
    }
    Ok(lhs.approx_eq(&rhs, crate::scalars::DEFAULT_TOLERANCE))
}

/// How `|Gamma(t)|` compares with `t(t-1)^(n-1)`.
pub fn inequality_compare<S: RealScalar>(g: &ThompsonElement, t: &S) -> Ordering {
    let graph = thompson_graph(g).graph;
    compare_with_tree_bound(&chromatic(&graph), graph.vertex_count(), t)
}

pub fn compare_with_tree_bound<S: RealScalar>(p: &IntPolynomial, n: usize, t: &S) -> Ordering {
    let lhs = p.eval(t).abs();
    let rhs = tree_bound(n).eval(t);
    lhs.partial_cmp(&rhs).expect("comparable")
}

/// `|Gamma(t)| <= t(t-1)^(n-1)`.
pub fn inequality_check<S: RealScalar>(g: &ThompsonElement, t: &S) -> bool {
    inequality_compare(g, t) != Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::vacuum;
    use crate::forests::enumerate_elements;
    use crate::scalars::{sqrt_exact, Quadratic};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chromatic_anchors() {
        let x0 = ThompsonElement::x0();
        let id = ThompsonElement::identity();
        let four = Quadratic::integer(4);
        assert_eq!(vacuum_via_chromatic(&x0, &four).unwrap(), Quadratic::ratio(2, 3));
        assert_eq!(vacuum_via_chromatic(&id, &four).unwrap(), Quadratic::integer(1));
        let x0x1: ThompsonElement = "x0 x1".parse().unwrap();
        assert_eq!(vacuum_via_chromatic(&x0x1, &Quadratic::integer(2)).unwrap(), Quadratic::integer(1));
        assert!(vacuum_via_chromatic(&x0, &Quadratic::integer(1)).is_err());
    }

    #[test]
    fn chromatic_matches_tl_expansion() {
        for d in [2, 3] {
            let delta = Quadratic::sqrt_int(d).unwrap();
            let r = RSpec::chromatic(delta).unwrap();
            let t = Quadratic::integer(d);
            for g in enumerate_elements(5) {
                assert_eq!(vacuum_via_chromatic(&g, &t).unwrap(), vacuum(&g, &r).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn tutte_anchor_and_agreement() {
        let ab = sqrt_exact(&BigRational::new(1.into(), 6.into())).unwrap();
        let r = RSpec::new(Quadratic::integer(2), ab.clone(), ab);
        assert_eq!(tutte_variables(&r).unwrap(), (Quadratic::integer(3), Quadratic::integer(3)));
        assert_eq!(vacuum_via_tutte(&ThompsonElement::x0(), &r).unwrap(), Quadratic::ratio(11, 12));
        // asymmetric exact point
        let b = Quadratic::ratio(1, 4);
        let a = (Quadratic::ratio(-1, 2) + Quadratic::sqrt_int(10).unwrap()) / Quadratic::integer(6);
        let r = RSpec::new(Quadratic::integer(3), a, b);
        for g in enumerate_elements(5) {
            assert_eq!(vacuum_via_tutte(&g, &r).unwrap(), vacuum(&g, &r).unwrap(), "{g}");
        }
        // chromatic point: y = 0 and x = 1 - t
        let r = RSpec::chromatic(Quadratic::sqrt_int(3).unwrap()).unwrap();
        assert_eq!(tutte_variables(&r).unwrap(), (Quadratic::integer(-2), Quadratic::integer(0)));
    }

    #[test]
    fn cone_identity() {
        let t = Quadratic::golden();
        let lambda = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        for attach in [vec![0], vec![0, 1], vec![0, 3], vec![1, 2, 3], vec![0, 1, 2, 3]] {
            assert!(cone_identity_check(&lambda, &attach, &t).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let lambda = Multigraph::new(6, (0..7).map(|_| (rng.gen_range(0..6), rng.gen_range(0..6)))).unwrap();
            assert!(cone_identity_check(&lambda, &[1, 3, 5], &7.25f64).unwrap());
            assert!(cone_identity_check(&lambda, &[0, 1, 2, 3, 4], &Quadratic::integer(3)).unwrap());
        }
        assert!(cone_identity_check(&lambda, &[], &t).is_err());
        assert!(cone_identity_check(&lambda, &[1, 1], &t).is_err());
    }

    #[test]
    fn inequality_on_small_elements() {
        let ts = [Quadratic::integer(2), Quadratic::golden() + Quadratic::integer(1), Quadratic::integer(3)];
        assert_eq!(inequality_compare(&ThompsonElement::identity(), &ts[0]), Ordering::Equal);
        for g in enumerate_elements(6) {
            for t in &ts {
                assert!(inequality_check(&g, t));
            }
            assert_eq!(inequality_compare(&g, &Quadratic::integer(3)), Ordering::Less);
        }
    }
}
