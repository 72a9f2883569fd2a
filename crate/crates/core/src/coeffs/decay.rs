use num_complex::Complex64;

use super::{vacuum_unchecked, CoeffError};
use crate::forests::ThompsonElement;
use crate::scalars::Scalar;
use crate::tl::RSpec;

/// The transfer matrix of the sequence `v_n = (d_n, e_n)` with
/// `d_n = phi(x0^(n-1))`, in the gauge of the stored parameters.
///
/// With `s` the gauge and `(a, b)` the stored parameters, the physical
/// matrix is conjugate by `diag(1, sqrt s)` to
///
/// ```text
/// [ s conj(b)(b delta + a)           conj(a)                                      ]
/// [ s^2 |b|^2 (b delta + a)          s(|a|^2 delta + a conj(b) + conj(a) b)       ]
/// ```
///
/// which is what is stored here, so trace and determinant are unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayMatrix<S> {
    pub a: [[S; 2]; 2],
    /// `(d_2, e_2)` in the same gauge.
    pub v2: [S; 2],
}

impl<S: Scalar> DecayMatrix<S> {
    /// Build `A` and recover `e_2` from the direct values `d_2`, `d_3`.
    pub fn new(r: &RSpec<S>) -> Result<Self, CoeffError> {
        let a = Self::matrix(r);
        if a[0][1].is_zero() {
            return Err(CoeffError::Degenerate("a = 0"));
        }
        let x0 = ThompsonElement::x0();
        let d2 = vacuum_unchecked(&x0, r);
        let d3 = vacuum_unchecked(&x0.pow(2), r);
        let e2 = (d3 - a[0][0].clone() * d2.clone()) / a[0][1].clone();
        Ok(DecayMatrix { a, v2: [d2, e2] })
    }

    pub fn matrix(r: &RSpec<S>) -> [[S; 2]; 2] {
        let (a, b, s, d) = (&r.a, &r.b, &r.gauge, &r.delta);
        let bda = b.clone() * d.clone() + a.clone();
        [
            [s.clone() * b.conj() * bda.clone(), a.conj()],
            [
                s.clone() * s.clone() * b.norm_sqr() * bda,
                s.clone() * (a.norm_sqr() * d.clone() + a.clone() * b.conj() + a.conj() * b.clone()),
            ],
        ]
    }

    pub fn trace(&self) -> S {
        self.a[0][0].clone() + self.a[1][1].clone()
    }

    pub fn det(&self) -> S {
        self.a[0][0].clone() * self.a[1][1].clone() - self.a[0][1].clone() * self.a[1][0].clone()
    }

    pub fn discriminant(&self) -> S {
        let t = self.trace();
        t.clone() * t - S::from_i64(4) * self.det()
    }

    /// Roots of the characteristic polynomial, in floating point.
    pub fn roots(&self) -> (Complex64, Complex64) {
        let t = Complex64::new(self.trace().re_f64(), 0.0);
        let disc = Complex64::new(self.discriminant().re_f64(), 0.0).sqrt();
        ((t + disc) / 2.0, (t - disc) / 2.0)
    }

    pub fn apply(&self, v: &[S; 2]) -> [S; 2] {
        let m = &self.a;
        [
            m[0][0].clone() * v[0].clone() + m[0][1].clone() * v[1].clone(),
            m[1][0].clone() * v[0].clone() + m[1][1].clone() * v[1].clone(),
        ]
    }
}

/// `phi(x0^k)` for `k = 1..=k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecaySequence<S> {
    pub values: Vec<S>,
    /// `false` when `a = 0` forced direct evaluation.
    pub via_matrix: bool,
}

/// `phi(x0^k)` for `k = 1..=k_max`, via powers of the transfer matrix.
pub fn decay_sequence<S: Scalar>(r: &RSpec<S>, k_max: usize) -> DecaySequence<S> {
    match DecayMatrix::new(r) {
        Ok(m) => {
            let mut values = Vec::with_capacity(k_max);
            let mut v = m.v2.clone();
            for _ in 0..k_max {
                values.push(v[0].clone());
                v = m.apply(&v);
            }
            DecaySequence { values, via_matrix: true }
        }
        Err(_) => {
            let x0 = ThompsonElement::x0();
            let values = (1..=k_max as i64).map(|k| vacuum_unchecked(&x0.pow(k), r)).collect();
            DecaySequence { values, via_matrix: false }
        }
    }
}

/// Characteristic roots `(r_+, r_-)` and whether both have modulus below 1.
pub fn spectral_check<S: Scalar>(r: &RSpec<S>) -> (Complex64, Complex64, bool) {
    let m = DecayMatrix { a: DecayMatrix::matrix(r), v2: [S::zero(), S::zero()] };
    let (rp, rm) = m.roots();
    let contracting = rp.norm() < 1.0 && rm.norm() < 1.0;
    (rp, rm, contracting)
}

/// A real point of the ellipse `delta(a^2+b^2) + 2ab = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipsePoint {
    pub theta: f64,
    pub a: f64,
    pub b: f64,
}

impl EllipsePoint {
    /// `u^2(delta+1) + w^2(delta-1) = 1` at angle `theta`, rotated by 45 degrees.
    pub fn at_angle(delta: f64, theta: f64) -> Self {
        let u = theta.cos() / (delta + 1.0).sqrt();
        let w = theta.sin() / (delta - 1.0).sqrt();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        EllipsePoint { theta, a: (u + w) * s, b: (u - w) * s }
    }

    pub fn residual(&self, delta: f64) -> f64 {
        (delta * (self.a * self.a + self.b * self.b) + 2.0 * self.a * self.b - 1.0).abs()
    }

    pub fn spec(&self, delta: f64) -> RSpec<f64> {
        RSpec::new(delta, self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::vacuum;
    use crate::scalars::{sqrt_exact, Quadratic};
    use num_rational::BigRational;

    fn sixth() -> RSpec<Quadratic> {
        let a = sqrt_exact(&BigRational::new(1.into(), 6.into())).unwrap();
        RSpec::new(Quadratic::integer(2), a.clone(), a)
    }

    #[test]
    fn matrix_invariants_at_delta_two() {
        let m = DecayMatrix::new(&sixth()).unwrap();
        assert_eq!(m.trace(), Quadratic::ratio(7, 6));
        assert_eq!(m.det(), Quadratic::ratio(1, 4));
        assert_eq!(m.discriminant(), Quadratic::ratio(13, 36));
        let (rp, rm) = m.roots();
        let s13 = 13f64.sqrt();
        assert!((rp.re - (7.0 + s13) / 12.0).abs() < 1e-12 && rp.im == 0.0);
        assert!((rm.re - (7.0 - s13) / 12.0).abs() < 1e-12);
    }

    #[test]
    fn sequence_matches_direct_evaluation() {
        let x0 = ThompsonElement::x0();
        for r in [sixth(), RSpec::chromatic(Quadratic::sqrt_int(2).unwrap()).unwrap()] {
            let seq = decay_sequence(&r, 8);
            assert!(seq.via_matrix);
            for (k, v) in seq.values.iter().enumerate() {
                assert_eq!(v, &vacuum(&x0.pow(k as i64 + 1), &r).unwrap(), "k = {}", k + 1);
            }
        }
    }

    #[test]
    fn root_two_chromatic_point_vanishes() {
        let r = RSpec::chromatic(Quadratic::sqrt_int(2).unwrap()).unwrap();
        let m = DecayMatrix::new(&r).unwrap();
        assert_eq!(m.trace(), Quadratic::integer(0));
        assert_eq!(m.det(), Quadratic::integer(0));
        let seq = decay_sequence(&r, 6);
        assert!(seq.values.iter().all(|v| *v == Quadratic::integer(0)));
    }

    #[test]
    fn boundary_case_b_zero() {
        let r = RSpec::new(4.0, 0.5, 0.0);
        let (rp, _, contracting) = spectral_check(&r);
        assert!((rp.norm() - 1.0).abs() < 1e-12);
        assert!(!contracting);
        // a = 0 takes the direct path
        let r = RSpec::new(4.0, 0.0, 0.5);
        let seq = decay_sequence(&r, 3);
        assert!(!seq.via_matrix);
        assert!(seq.values.iter().all(|v: &f64| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn ellipse_points_are_normalized_and_contracting() {
        for delta in [2f64.sqrt(), 3f64.sqrt(), 2.0, 3.0] {
            for k in 0..40 {
                let p = EllipsePoint::at_angle(delta, 0.157 * k as f64 + 0.01);
                assert!(p.residual(delta) < 1e-12);
                let r = p.spec(delta);
                assert!(r.is_normalized(1e-12));
                let (rp, rm, c) = spectral_check(&r);
                assert!(c || (p.a * p.b).abs() < 1e-12);
                // points close to ab = 0 decay too slowly to watch
                let rho = rp.norm().max(rm.norm());
                let k = ((1e-5f64).ln() / rho.ln()).ceil() as usize + 50;
                if k <= 5000 {
                    let seq = decay_sequence(&r, k);
                    assert!(seq.values.last().unwrap().abs() < 1e-3, "delta {delta}, theta {}", p.theta);
                }
            }
        }
    }
}
