//! Integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Scalar;

/// Polynomial with big-integer coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64s(&[c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `t - c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64s(&[-c, 1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Horner evaluation in the backend of `x`.
    pub fn eval<S: Scalar>(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + S::from_bigint(c);
        }
        acc
    }

    /// Multiply by `t^k`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: c }
    }

    /// Exact division by a monic polynomial; `None` if a remainder is left.
    pub fn div_exact_monic(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(Zero::is_zero).then(Self::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }
}

impl Zero for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl Add for IntPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        for (k, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[k] += c;
        }
        Self::new(long.coeffs)
    }
}

impl Neg for IntPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        IntPolynomial { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for IntPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for IntPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }
}

fn write_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, BigInt)>,
    monomial: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let m = monomial(&k);
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        match (m.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => write!(f, "{m}")?,
            (false, false) => write!(f, "{mag}*{m}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()));
        write_terms(f, terms, |&k| match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        })
    }
}

/// Sparse polynomial in `x, y` keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivarPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPolynomial {
    pub fn monomial(c: i64, dx: u32, dy: u32) -> Self {
        let mut p = Self::default();
        p.add_term(dx, dy, BigInt::from(c));
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dx, dy)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// Multiply by `x^dx y^dy`.
    pub fn shifted(&self, dx: u32, dy: u32) -> Self {
        BivarPolynomial {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + dx, j + dy), c.clone())).collect(),
        }
    }

    pub fn eval<S: Scalar>(&self, x: &S, y: &S) -> S {
        let mut acc = S::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + S::from_bigint(c) * x.pow(i) * y.pow(j);
        }
        acc
    }
}

impl Zero for BivarPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BivarPolynomial {
    fn one() -> Self {
        Self::monomial(1, 0, 0)
    }
}

impl Add for BivarPolynomial {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for ((i, j), c) in rhs.terms {
            self.add_term(i, j, c);
        }
        self
    }
}

impl Mul for BivarPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BivarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(k, c)| (*k, c.clone()));
        write_terms(f, terms, |&(i, j)| {
            let part = |v: &str, e: u32| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            match (part("x", i), part("y", j)) {
                (a, b) if a.is_empty() => b,
                (a, b) if b.is_empty() => a,
                (a, b) => format!("{a}*{b}"),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Quadratic;
    use num_rational::BigRational;

    fn falling3() -> IntPolynomial {
        IntPolynomial::t() * IntPolynomial::linear(1) * IntPolynomial::linear(2)
    }

    #[test]
    fn horner_on_integers() {
        let p = falling3();
        assert_eq!(p, IntPolynomial::from_i64s(&[0, 2, -3, 1]));
        assert_eq!(p.eval(&BigRational::from_integer(3.into())), BigRational::from_integer(6.into()));
        assert_eq!(p.eval(&2.0f64), 0.0);
    }

    #[test]
    fn horner_in_quadratic_field() {
        // s = (5+sqrt5)/2 satisfies s^2 = 5s - 5, so s(s-1)(s-2) = 7s - 10
        let s = (Quadratic::integer(5) + Quadratic::sqrt_int(5).unwrap()) / Quadratic::integer(2);
        let v = falling3().eval(&s);
        assert_eq!(v, Quadratic::integer(7) * s - Quadratic::integer(10));
    }

    #[test]
    fn trimming_and_display() {
        let p = IntPolynomial::from_i64s(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert!((falling3() - falling3()).is_zero());
        assert_eq!(falling3().to_string(), "t^3 - 3*t^2 + 2*t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn monic_division() {
        let p = falling3();
        assert_eq!(p.div_exact_monic(&IntPolynomial::linear(2)), Some(IntPolynomial::t() * IntPolynomial::linear(1)));
        assert_eq!(p.div_exact_monic(&IntPolynomial::linear(5)), None);
    }

    #[test]
    fn bivariate() {
        let p = BivarPolynomial::x() * BivarPolynomial::x() + BivarPolynomial::x() + BivarPolynomial::y();
        assert_eq!(p.eval(&3.0f64, &3.0), 15.0);
        assert_eq!(p.to_string(), "x^2 + x + y");
        let q = p.clone() + BivarPolynomial::monomial(-1, 0, 1);
        assert_eq!(q.coeff(0, 1), BigInt::zero());
        assert_eq!(q.terms().count(), 2);
    }
}
