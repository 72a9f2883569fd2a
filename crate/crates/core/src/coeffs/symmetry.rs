use num_complex::Complex64;

use super::vacuum_unchecked;
use crate::forests::ThompsonElement;
use crate::scalars::{Scalar, DEFAULT_TOLERANCE};
use crate::tl::RSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryCheck<S> {
    pub name: &'static str,
    pub lhs: S,
    pub rhs: S,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport<S> {
    pub checks: Vec<SymmetryCheck<S>>,
}

impl<S> SymmetryReport<S> {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SymmetryCheck<S>> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// The five coefficient identities at `g`, with phase `z = -1` for (iv).
pub fn symmetry_suite<S: Scalar>(g: &ThompsonElement, r: &RSpec<S>) -> SymmetryReport<S> {
    symmetry_suite_with(g, r, &-S::one(), DEFAULT_TOLERANCE)
}

/// Checks, in order:
/// (i) mirror swaps `a` and `b`; (ii) shift invariance;
/// (iii) `phi(alpha g) = phi(g) phi(mirror g)`; (iv) phase invariance under
/// `(a, b) -> (za, zb)`; (v) `phi(g^-1) = conj(phi(g))`.
///
/// `z` must have modulus one. Exact backends compare exactly.
pub fn symmetry_suite_with<S: Scalar>(g: &ThompsonElement, r: &RSpec<S>, z: &S, tol: f64) -> SymmetryReport<S> {
    let phi = |h: &ThompsonElement, r: &RSpec<S>| vacuum_unchecked(h, r);
    let base = phi(g, r);
    let mirrored = phi(&g.mirror(), r);
    let mut checks = Vec::with_capacity(5);
    let mut push = |name, lhs: S, rhs: S| {
        let holds = lhs.approx_eq(&rhs, tol);
        checks.push(SymmetryCheck { name, lhs, rhs, holds });
    };
    push("mirror", mirrored.clone(), phi(g, &r.swapped()));
    push("shift", phi(&g.shift(), r), base.clone());
    push("alpha", phi(&g.alpha_double(), r), base.clone() * mirrored);
    push("phase", phi(g, &r.rotated(z)), base.clone());
    push("inverse", phi(&g.inverse(), r), base.conj());
    SymmetryReport { checks }
}

/// Parameters `a = A/sqrt(delta)`, `b = conj(A)/sqrt(delta)` with
/// `A = exp(i pi (1 + sign/n)/2)` and `delta = -A^2 - A^-2 = 2 cos(pi/n)`.
pub fn kauffman_spec(n_root: u32, sign: i32) -> RSpec<Complex64> {
    assert!(n_root >= 3, "n_root must be at least 3");
    let s = if sign >= 0 { 1.0 } else { -1.0 };
    let theta = std::f64::consts::PI * (1.0 + s / n_root as f64) / 2.0;
    let big_a = Complex64::from_polar(1.0, theta);
    let delta = -(big_a * big_a) - (big_a * big_a).inv();
    let root = delta.re.sqrt();
    RSpec::new(Complex64::new(delta.re, 0.0), big_a / root, big_a.conj() / root)
}

pub fn kauffman_vacuum(g: &ThompsonElement, n_root: u32, sign: i32) -> Complex64 {
    vacuum_unchecked(g, &kauffman_spec(n_root, sign))
}
