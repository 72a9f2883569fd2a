//! Scalar arithmetic shared by every evaluator.
//!
//! The diagram calculus only needs ring operations and a conjugation, so the
//! hierarchy is split in three layers:
//!
//! * [`Ring`]: addition, multiplication, conjugation.
//! * [`Scalar`]: a field, with a notion of (approximate) equality.
//! * [`RealScalar`]: an ordered real field, needed for inequalities.
//!
//! Implementations exist for `f32`, `f64`, `Complex<f32>`, `Complex<f64>`,
//! [`BigRational`] and the quadratic field [`Quadratic`].

mod laurent;
mod literal;
mod poly;
mod quadratic;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use laurent::Laurent;
pub use literal::{parse_literal, Literal};
pub use poly::{BivarPolynomial, IntPolynomial};
pub use quadratic::{sqrt_exact, Quadratic};

/// Default tolerance used when comparing floating point values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix Q(sqrt {0}) with Q(sqrt {1})")]
    RadicandMismatch(u64, u64),
    #[error("square root of a negative number {0}")]
    NegativeSqrt(String),
    #[error("radicand {0} is not a squarefree integer greater than one")]
    BadRadicand(u64),
    #[error("cannot parse scalar literal `{0}`: {1}")]
    Parse(String, String),
}

/// Commutative ring with an involutive conjugation.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// Complex conjugation; the identity on real rings.
    fn conj(&self) -> Self;

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A field of scalars, exact or floating.
pub trait Scalar: Ring + Div<Output = Self> {
    /// Exact backends support decidable equality.
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self;

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Absolute value as a float.
    fn modulus(&self) -> f64;

    /// Real part as a float.
    fn re_f64(&self) -> f64;

    /// Equality: exact on exact backends, `|x - y| <= tol * max(1, |x|, |y|)`
    /// on float backends.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let diff = (self.clone() - other.clone()).modulus();
            diff <= tol * 1f64.max(self.modulus()).max(other.modulus())
        }
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }

    /// `|x|^2`, as an element of the same field.
    fn norm_sqr(&self) -> Self {
        self.clone() * self.conj()
    }
}

/// Ordered real field.
pub trait RealScalar: Scalar + PartialOrd {
    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

macro_rules! impl_float {
    ($($f:ty),*) => {$(
        impl Ring for $f {
            fn from_i64(n: i64) -> Self {
                n as $f
            }
            fn conj(&self) -> Self {
                *self
            }
        }

        impl Scalar for $f {
            const EXACT: bool = false;
            fn from_rational(r: &BigRational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $f
            }
            fn modulus(&self) -> f64 {
                (*self as f64).abs()
            }
            fn re_f64(&self) -> f64 {
                *self as f64
            }
        }

        impl RealScalar for $f {}

        impl Ring for Complex<$f> {
            fn from_i64(n: i64) -> Self {
                Complex::new(n as $f, 0.0)
            }
            fn conj(&self) -> Self {
                Complex::conj(self)
            }
        }

        impl Scalar for Complex<$f> {
            const EXACT: bool = false;
            fn from_rational(r: &BigRational) -> Self {
                Complex::new(r.to_f64().unwrap_or(f64::NAN) as $f, 0.0)
            }
            fn modulus(&self) -> f64 {
                self.norm() as f64
            }
            fn re_f64(&self) -> f64 {
                self.re as f64
            }
        }
    )*};
}

impl_float!(f32, f64);

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn modulus(&self) -> f64 {
        Signed::abs(self).to_f64().unwrap_or(f64::NAN)
    }
    fn re_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl RealScalar for BigRational {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn float_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 1e-12), DEFAULT_TOLERANCE));
        assert!(!1.0f64.approx_eq(&1.001, DEFAULT_TOLERANCE));
        assert!(1.0f64.approx_eq(&1.001, 1e-2));
    }

    #[test]
    fn complex_conjugation_is_multiplicative() {
        let x = Complex::new(0.3f64, -1.7);
        let y = Complex::new(-2.1f64, 0.4);
        let lhs = Ring::conj(&(x * y));
        let rhs = Ring::conj(&x) * Ring::conj(&y);
        assert!((lhs - rhs).norm() < 1e-12);
        assert_eq!(Ring::conj(&2.5f64), 2.5);
    }

    #[test]
    fn powers() {
        assert_eq!(Ring::pow(&q(2, 3), 3), q(8, 27));
        assert_eq!(Ring::pow(&3.0f64, 0), 1.0);
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(ScalarError::DivisionByZero));
    }
}
