use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{RealScalar, Ring, Scalar, ScalarError};

/// An element `p + q·√d` of the real quadratic field `Q(√d)`.
///
/// `d = 1` marks a plain rational (then `q = 0`); it promotes into any
/// `Q(√d)` on contact. Two values with different radicands `d, d' > 1` never
/// mix: the checked operations return [`ScalarError::RadicandMismatch`] and
/// the operator impls panic.
#[derive(Clone, Debug, Eq)]
pub struct Quadratic {
    rat: BigRational,
    irr: BigRational,
    d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_squarefree(d: u64) -> bool {
    let mut k = 2u64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits `n > 0` as `r² · d` with `d` squarefree.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut rem = n.clone();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    let mut k = BigInt::from(2u32);
    while &k * &k <= rem {
        let kk = &k * &k;
        while (&rem % &kk).is_zero() {
            rem /= &kk;
            root *= &k;
        }
        if (&rem % &k).is_zero() {
            rem /= &k;
            free *= &k;
        }
        k += 1u32;
    }
    (root, free * rem)
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// Square root of a nonnegative rational: rational when `x` is a square,
/// otherwise `r·√d` with `x = r²·d`, `d` squarefree.
pub fn sqrt_exact(x: &BigRational) -> Result<Quadratic, ScalarError> {
    if x.is_negative() {
        return Err(ScalarError::NegativeSqrt(x.to_string()));
    }
    if x.is_zero() {
        return Ok(Quadratic::zero());
    }
    // sqrt(n/m) = sqrt(n·m)/m
    let prod = x.numer() * x.denom();
    let (root, free) = square_part(&prod);
    let coeff = BigRational::new(root, x.denom().clone());
    if free.is_one() {
        return Ok(Quadratic::rational(coeff));
    }
    let d = free
        .to_u64()
        .ok_or_else(|| ScalarError::Parse(x.to_string(), "radicand too large".into()))?;
    Ok(Quadratic {
        rat: BigRational::zero(),
        irr: coeff,
        d,
    })
}

impl Quadratic {
    pub fn rational(r: BigRational) -> Self {
        Quadratic {
            rat: r,
            irr: BigRational::zero(),
            d: 1,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `p + q·√d`; `d` must be a squarefree integer `> 1` unless `q = 0`.
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Result<Self, ScalarError> {
        if q.is_zero() {
            return Ok(Self::rational(p));
        }
        if d < 2 || !is_squarefree(d) {
            return Err(ScalarError::BadRadicand(d));
        }
        Ok(Quadratic { rat: p, irr: q, d })
    }

    /// `√n` for a nonnegative integer.
    pub fn sqrt_int(n: i64) -> Result<Self, ScalarError> {
        sqrt_exact(&BigRational::from_integer(n.into()))
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden() -> Self {
        Quadratic {
            rat: BigRational::new(1.into(), 2.into()),
            irr: BigRational::new(1.into(), 2.into()),
            d: 5,
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irr
    }

    /// Radicand, or `None` for a plain rational.
    pub fn radicand(&self) -> Option<u64> {
        (!self.irr.is_zero()).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rat.clone())
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => Err(ScalarError::RadicandMismatch(x, y)),
            (Some(x), _) | (_, Some(x)) => Ok(x),
            (None, None) => Ok(self.d.max(other.d)),
        }
    }

    /// Field arithmetic with explicit error reporting.
    pub fn arith(&self, rhs: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        let d = self.common_radicand(rhs)?;
        let dq = BigRational::from_integer(d.into());
        Ok(match op {
            ArithOp::Add => Quadratic {
                rat: &self.rat + &rhs.rat,
                irr: &self.irr + &rhs.irr,
                d,
            },
            ArithOp::Sub => Quadratic {
                rat: &self.rat - &rhs.rat,
                irr: &self.irr - &rhs.irr,
                d,
            },
            ArithOp::Mul => Quadratic {
                rat: &self.rat * &rhs.rat + &self.irr * &rhs.irr * &dq,
                irr: &self.rat * &rhs.irr + &self.irr * &rhs.rat,
                d,
            },
            ArithOp::Div => {
                // (p + q√d)^{-1} = (p - q√d) / (p² - q²d)
                let norm = &rhs.rat * &rhs.rat - &rhs.irr * &rhs.irr * &dq;
                if norm.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                let inv = Quadratic {
                    rat: &rhs.rat / &norm,
                    irr: -(&rhs.irr / &norm),
                    d,
                };
                self.arith(&inv, ArithOp::Mul)?
            }
        })
    }

    /// Field norm `p² - d q²`.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - &self.irr * &self.irr * BigRational::from_integer(self.d.into())
    }

    pub fn signum(&self) -> Ordering {
        let sp = self.rat.cmp(&BigRational::zero());
        let sq = self.irr.cmp(&BigRational::zero());
        match (sp, sq) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            _ => {
                // opposite signs: the larger of p² and q²d wins
                let p2 = &self.rat * &self.rat;
                let q2d = &self.irr * &self.irr * BigRational::from_integer(self.d.into());
                match p2.cmp(&q2d) {
                    Ordering::Greater => sp,
                    Ordering::Less => sq,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Square root inside the same field, when it exists.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        if self.signum() == Ordering::Less {
            return None;
        }
        if self.is_rational() {
            return sqrt_exact(&self.rat).ok();
        }
        // (x + y√d)² = p + q√d  ⇔  x² + d y² = p, 2xy = q
        let s = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.rat + &s) / &two, (&self.rat - &s) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.irr / (&two * &x);
                let root = Quadratic {
                    rat: x,
                    irr: y,
                    d: self.d,
                };
                let root = if root.signum() == Ordering::Less { -root } else { root };
                return Some(root);
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.rat.to_f64().unwrap_or(f64::NAN);
        let q = self.irr.to_f64().unwrap_or(f64::NAN);
        p + q * (self.d as f64).sqrt()
    }
}

impl PartialEq for Quadratic {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat && self.irr == other.irr && (self.irr.is_zero() || self.d == other.d)
    }
}

impl Hash for Quadratic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rat.hash(state);
        self.irr.hash(state);
        if !self.irr.is_zero() {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.arith(other, ArithOp::Sub).ok()?;
        Some(diff.signum())
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let den = self.rat.denom().lcm(self.irr.denom());
        let a = self.rat.numer() * (&den / self.rat.denom());
        let b = self.irr.numer() * (&den / self.irr.denom());
        let surd = if b.is_one() {
            format!("sqrt({})", self.d)
        } else if b == -BigInt::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", b, self.d)
        };
        let body = if a.is_zero() {
            surd
        } else if b.is_negative() {
            format!("{a}{surd}")
        } else {
            format!("{a}+{surd}")
        };
        if den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr for Quadratic {
            type Output = Quadratic;
            fn $m(self, rhs: Quadratic) -> Quadratic {
                match self.arith(&rhs, $op) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl<'a> $tr<&'a Quadratic> for &'a Quadratic {
            type Output = Quadratic;
            fn $m(self, rhs: &'a Quadratic) -> Quadratic {
                match self.arith(rhs, $op) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

forward_op!(Add, add, ArithOp::Add);
forward_op!(Sub, sub, ArithOp::Sub);
forward_op!(Mul, mul, ArithOp::Mul);
forward_op!(Div, div, ArithOp::Div);

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            rat: -self.rat,
            irr: -self.irr,
            d: self.d,
        }
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl From<BigRational> for Quadratic {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl Ring for Quadratic {
    fn from_i64(n: i64) -> Self {
        Self::integer(n)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Scalar for Quadratic {
    const EXACT: bool = true;
    fn from_rational(r: &BigRational) -> Self {
        Self::rational(r.clone())
    }
    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }
    fn re_f64(&self) -> f64 {
        self.to_f64()
    }
    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.arith(rhs, ArithOp::Div)
    }
}

impl RealScalar for Quadratic {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt(n: i64) -> Quadratic {
        Quadratic::sqrt_int(n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let one = Quadratic::integer(1);
        let s2 = sqrt(2);
        assert_eq!((&one + &s2) * (&one - &s2), Quadratic::integer(-1));
    }

    #[test]
    fn product_in_q_sqrt5() {
        let s5 = sqrt(5);
        let x = (Quadratic::integer(5) + s5.clone()) / Quadratic::integer(2);
        let y = (Quadratic::integer(3) + s5.clone()) / Quadratic::integer(2);
        assert_eq!(x * y, Quadratic::integer(5) + Quadratic::integer(2) * s5);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt(4), Quadratic::integer(2));
        let s2 = sqrt(2);
        assert_eq!(s2.radicand(), Some(2));
        assert_eq!(s2.irrational_part(), &BigRational::one());
        let s8 = sqrt(8);
        assert_eq!(s8.radicand(), Some(2));
        assert_eq!(s8.irrational_part(), &BigRational::from_integer(2.into()));
        let r = sqrt_exact(&BigRational::new(9.into(), 8.into())).unwrap();
        assert_eq!(r.clone() * r, Quadratic::ratio(9, 8));
        assert!(sqrt_exact(&BigRational::from_integer((-3).into())).is_err());
    }

    #[test]
    fn mixing_radicands_is_an_error() {
        let err = sqrt(2).arith(&sqrt(3), ArithOp::Add).unwrap_err();
        assert_eq!(err, ScalarError::RadicandMismatch(2, 3));
        assert_eq!(
            sqrt(2).arith(&Quadratic::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn ordering_and_sign() {
        let tau = Quadratic::golden();
        assert!(tau > Quadratic::ratio(161, 100));
        assert!(tau < Quadratic::ratio(162, 100));
        let x = Quadratic::integer(1) - sqrt(2);
        assert_eq!(x.signum(), Ordering::Less);
        assert!((x.to_f64() - (1.0 - 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn square_root_inside_field() {
        let tau = Quadratic::golden();
        let tau2 = &tau * &tau;
        assert_eq!(tau2.sqrt_in_field(), Some(tau.clone()));
        let tau_plus_2 = &tau + &Quadratic::integer(2);
        assert_eq!(tau_plus_2.sqrt_in_field(), None);
    }

    #[test]
    fn display_round_trips_through_the_literal_parser() {
        let tau = Quadratic::golden();
        assert_eq!(tau.to_string(), "(1+sqrt(5))/2");
        let v = Quadratic::integer(3) - Quadratic::integer(2) * sqrt(2);
        assert_eq!(v.to_string(), "3-2*sqrt(2)");
        for x in [tau, v, Quadratic::ratio(-7, 3)] {
            let back = crate::scalars::parse_literal(&x.to_string()).unwrap();
            assert_eq!(back.as_exact(), Some(&x));
        }
    }

    fn arb_q5() -> impl Strategy<Value = Quadratic> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7).prop_map(|(a, b, c, d)| {
            Quadratic::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
                5,
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_q5(), y in arb_q5(), z in arb_q5()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
        }

        #[test]
        fn sqrt_exact_squares_back(n in 0i64..5000, m in 1i64..200) {
            let r = BigRational::new(n.into(), m.into());
            let s = sqrt_exact(&r).unwrap();
            prop_assert_eq!(&s * &s, Quadratic::rational(r));
        }
    }
}
