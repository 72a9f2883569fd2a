//! Vacuum coefficients of the Jones representations of Thompson's group F
//! built from Temperley-Lieb-Jones diagram algebras.

pub mod coeffs;
pub mod forests;
pub mod graphpoly;
pub mod scalars;
pub mod subgroups;
pub mod tl;

pub use num_complex::Complex;
pub use scalars::{Laurent, Quadratic, Ring, Scalar};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Exact elements of a real quadratic field `Q(sqrt d)`.
pub type QuadField = Quadratic;
pub type Real = f64;
pub type Complex64 = Complex<f64>;
