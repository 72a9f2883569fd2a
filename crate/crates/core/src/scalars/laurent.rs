//! Laurent polynomials `Z[X, X^-1]` with machine-integer coefficients.
//!
//! Used to run the diagram calculus symbolically in the loop parameter and
//! substitute a concrete value only at the end. Coefficient overflow panics;
//! for trees of up to a dozen leaves the coefficients stay far below `i64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    /// Exponent of `coeffs[0]`.
    low: i32,
    /// No zero at either end; empty for the zero polynomial.
    coeffs: Vec<i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("Laurent coefficient overflow")
}

impl Laurent {
    pub fn monomial(c: i64, exp: i32) -> Self {
        Self::from_parts(exp, vec![c])
    }

    /// The variable `X`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_parts(low: i32, coeffs: Vec<i64>) -> Self {
        let mut l = Laurent { low, coeffs };
        l.trim();
        l
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i32, c))
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let k = exp - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Multiply by `X^k`.
    pub fn shifted(&self, k: i32) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self::from_parts(self.low, self.coeffs.iter().map(|&x| checked(x.checked_mul(c))).collect())
    }

    /// Substitute `X = x`.
    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        if self.coeffs.is_empty() {
            return S::zero();
        }
        let mut acc = S::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + S::from_i64(c);
        }
        let scale = if self.low >= 0 {
            x.pow(self.low as u32)
        } else {
            x.inv().expect("negative powers need a nonzero argument").pow((-self.low) as u32)
        };
        acc * scale
    }

    fn add_into(&mut self, rhs: &Laurent, sign: i64) {
        if rhs.coeffs.is_empty() {
            return;
        }
        if self.coeffs.is_empty() {
            self.low = rhs.low;
            self.coeffs = rhs.coeffs.iter().map(|&c| checked(c.checked_mul(sign))).collect();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i32).max(rhs.low + rhs.coeffs.len() as i32);
        if low < self.low {
            let pad = (self.low - low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat(0).take(pad));
            self.low = low;
        }
        self.coeffs.resize((high - low) as usize, 0);
        let off = (rhs.low - low) as usize;
        for (k, &c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[off + k];
            *slot = checked(slot.checked_add(checked(c.checked_mul(sign))));
        }
        self.trim();
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::monomial(1, 0)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self.add_into(&rhs, 1);
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        self.add_into(&rhs, -1);
        self
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scaled(-1)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Laurent::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                out[i + j] = checked(out[i + j].checked_add(checked(x.checked_mul(y))));
            }
        }
        Laurent::from_parts(self.low + rhs.low, out)
    }
}

impl Ring for Laurent {
    fn from_i64(n: i64) -> Self {
        Laurent::monomial(n, 0)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let m = c.unsigned_abs();
            match e {
                0 => write!(f, "{m}")?,
                _ if m == 1 => write!(f, "X^{e}")?,
                _ => write!(f, "{m}*X^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Quadratic;
    use num_rational::BigRational;

    #[test]
    fn arithmetic_and_trimming() {
        let x = Laurent::x();
        let xinv = Laurent::monomial(1, -1);
        assert_eq!(x.clone() * xinv.clone(), Laurent::one());
        let p = x.clone() + xinv.clone();
        let sq = p.clone() * p.clone();
        assert_eq!(sq.coeff(2), 1);
        assert_eq!(sq.coeff(0), 2);
        assert_eq!(sq.coeff(-2), 1);
        assert!((p.clone() - p).is_zero());
        assert_eq!(Laurent::from_parts(-3, vec![0, 0, 4, 0]), Laurent::monomial(4, -1));
    }

    #[test]
    fn evaluation() {
        // X - 1/X at X = 2 is 3/2
        let p = Laurent::x() - Laurent::monomial(1, -1);
        let v: BigRational = p.eval(&BigRational::from_integer(2.into()));
        assert_eq!(v, BigRational::new(3.into(), 2.into()));
        let r2 = Quadratic::sqrt_int(2).unwrap();
        // X^2 + X^-2 at sqrt 2 is 5/2
        let q = Laurent::monomial(1, 2) + Laurent::monomial(1, -2);
        assert_eq!(q.eval(&r2), Quadratic::ratio(5, 2));
        assert_eq!(Laurent::zero().eval(&r2), Quadratic::integer(0));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let _ = Laurent::monomial(i64::MAX, 0) + Laurent::one();
    }
}
