use super::CoeffError;
use crate::forests::ThompsonElement;
use num_traits::One;

use crate::scalars::{Laurent, Scalar, DEFAULT_TOLERANCE};
use crate::tl::{line, pairing, RSpec};

/// `phi(g)` for `g = plus/minus`: the scalar of `Phi(plus)^† ∘ Phi(minus)`.
///
/// Fails if the parameters are not normalized (float backends use the
/// default tolerance).
pub fn vacuum<S: Scalar>(g: &ThompsonElement, r: &RSpec<S>) -> Result<S, CoeffError> {
    check_normalized(r, DEFAULT_TOLERANCE)?;
    Ok(vacuum_unchecked(g, r))
}

pub fn check_normalized<S: Scalar>(r: &RSpec<S>, tol: f64) -> Result<(), CoeffError> {
    if r.is_normalized(tol) {
        Ok(())
    } else {
        Err(CoeffError::NotNormalized(r.normalization_residual()))
    }
}

/// [`vacuum`] without the normalization check.
pub fn vacuum_unchecked<S: Scalar>(g: &ThompsonElement, r: &RSpec<S>) -> S {
    let n = g.n_leaves() as u32;
    r.gauge.pow(n - 1) * pairing(g.plus(), g.minus(), r)
}

/// The pairing at the chromatic point as a Laurent polynomial in `delta`,
/// before the gauge factor `(delta/(delta^2-1))^(n-1)`.
pub fn chromatic_laurent(g: &ThompsonElement) -> Laurent {
    let x = Laurent::x();
    let b = -Laurent::monomial(1, -1);
    line::tree_pairing(g.plus(), g.minus(), &x, &Laurent::one(), &b)
}

/// Vacuum coefficient at the chromatic point for loop value `delta`,
/// computed symbolically in `delta` and evaluated at the end.
pub fn chromatic_vacuum<S: Scalar>(g: &ThompsonElement, delta: &S) -> Result<S, CoeffError> {
    let d2m1 = delta.clone() * delta.clone() - S::one();
    let gauge = delta.checked_div(&d2m1).map_err(|_| CoeffError::Degenerate("delta^2 = 1"))?;
    if delta.is_zero() {
        return Err(CoeffError::Degenerate("delta = 0"));
    }
    let n = g.n_leaves() as u32;
    Ok(gauge.pow(n - 1) * chromatic_laurent(g).eval(delta))
}

/// `(phi(x0), phi(x1 x0), phi(x0 x1))` from their closed forms.
pub fn closed_forms_x0<S: Scalar>(r: &RSpec<S>) -> (S, S, S) {
    let one = S::one();
    let d2 = r.delta.clone() * r.delta.clone();
    let d2m1 = d2 - one.clone();
    // physical |a|^2 and |b|^2
    let a2 = r.gauge.clone() * r.a.norm_sqr();
    let b2 = r.gauge.clone() * r.b.norm_sqr();
    let phi0 = one.clone() - a2.clone() * b2.clone() * d2m1.clone();
    let phi10 = phi0.clone() * phi0.clone();
    let phi01 = phi10.clone()
        + a2.clone() * a2 * b2.clone() * d2m1.clone() * d2m1.clone() * (r.delta.clone() / d2m1 - b2);
    (phi0, phi10, phi01)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{sqrt_exact, Quadratic};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn el(s: &str) -> ThompsonElement {
        s.parse().unwrap()
    }

    fn sixth() -> RSpec<Quadratic> {
        let a = sqrt_exact(&q(1, 6)).unwrap();
        RSpec::new(Quadratic::integer(2), a.clone(), a)
    }

    #[test]
    fn identity_is_one() {
        assert_eq!(vacuum(&ThompsonElement::identity(), &sixth()).unwrap(), Quadratic::integer(1));
    }

    #[test]
    fn values_at_delta_two() {
        let r = sixth();
        assert_eq!(vacuum(&el("x0"), &r).unwrap(), Quadratic::ratio(11, 12));
        assert_eq!(vacuum(&el("x1 x0"), &r).unwrap(), Quadratic::ratio(121, 144));
        assert_eq!(vacuum(&el("x0 x1"), &r).unwrap(), Quadratic::ratio(31, 36));
        let (a, b, c) = closed_forms_x0(&r);
        assert_eq!((a, b, c), (Quadratic::ratio(11, 12), Quadratic::ratio(121, 144), Quadratic::ratio(31, 36)));
    }

    #[test]
    fn closed_forms_match_expansion_for_asymmetric_parameters() {
        // a real point with a != b on the delta = 3 ellipse: b = 1/4 gives
        // 3a^2 + a/2 + 3/16 = 1, so a = (-1/2 + sqrt 10)/6
        let b = Quadratic::ratio(1, 4);
        let a = (Quadratic::ratio(-1, 2) + Quadratic::sqrt_int(10).unwrap()) / Quadratic::integer(6);
        let r = RSpec::new(Quadratic::integer(3), a, b);
        assert!(r.is_normalized(0.0));
        let (c0, c10, c01) = closed_forms_x0(&r);
        assert_eq!(vacuum(&el("x0"), &r).unwrap(), c0);
        assert_eq!(vacuum(&el("x1 x0"), &r).unwrap(), c10);
        assert_eq!(vacuum(&el("x0 x1"), &r).unwrap(), c01);
        assert_ne!(c10, c01);
    }

    #[test]
    fn chromatic_point_at_root_two() {
        let r2 = Quadratic::sqrt_int(2).unwrap();
        let r = RSpec::chromatic(r2.clone()).unwrap();
        assert_eq!(vacuum(&el("x0"), &r).unwrap(), Quadratic::integer(0));
        assert_eq!(vacuum(&el("x0 x1"), &r).unwrap(), Quadratic::integer(1));
        assert_eq!(closed_forms_x0(&r), (Quadratic::integer(0), Quadratic::integer(0), Quadratic::integer(1)));
        assert_eq!(chromatic_vacuum(&el("x0 x1"), &r2).unwrap(), Quadratic::integer(1));
    }

    #[test]
    fn chromatic_x0_is_t_minus_two_over_t_minus_one() {
        for d in [Quadratic::integer(2), Quadratic::integer(3), Quadratic::sqrt_int(3).unwrap()] {
            let t = d.clone() * d.clone();
            let expect = (t.clone() - Quadratic::integer(2)) / (t - Quadratic::integer(1));
            assert_eq!(chromatic_vacuum(&el("x0"), &d).unwrap(), expect);
            assert_eq!(vacuum(&el("x0"), &RSpec::chromatic(d).unwrap()).unwrap(), expect);
        }
    }

    #[test]
    fn laurent_path_agrees_with_field_path() {
        let d = Quadratic::sqrt_int(3).unwrap();
        let r = RSpec::chromatic(d.clone()).unwrap();
        for g in crate::forests::enumerate_elements(5) {
            assert_eq!(chromatic_vacuum(&g, &d).unwrap(), vacuum(&g, &r).unwrap());
        }
    }

    #[test]
    fn unnormalized_is_rejected() {
        let r = RSpec::new(q(2, 1), q(1, 1), q(1, 1));
        assert!(matches!(vacuum(&el("x0"), &r), Err(CoeffError::NotNormalized(_))));
    }

    #[test]
    fn trivial_representation() {
        let r = RSpec::new(Quadratic::integer(2), sqrt_exact(&q(1, 2)).unwrap(), Quadratic::integer(0));
        assert_eq!(closed_forms_x0(&r), (Quadratic::integer(1), Quadratic::integer(1), Quadratic::integer(1)));
        for g in crate::forests::enumerate_elements(5) {
            assert_eq!(vacuum(&g, &r).unwrap(), Quadratic::integer(1));
        }
    }
}
