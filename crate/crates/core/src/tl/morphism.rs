use std::fmt;

use rustc_hash::FxHashMap;

use super::{TLDiagram, TlError};
use crate::scalars::Ring;

/// Finite linear combination of diagrams with common boundary counts.
#[derive(Clone, Debug, PartialEq)]
pub struct TLMorphism<R: Ring> {
    bottom: usize,
    top: usize,
    terms: FxHashMap<TLDiagram, R>,
}

impl<R: Ring> TLMorphism<R> {
    pub fn zero(bottom: usize, top: usize) -> Self {
        TLMorphism { bottom, top, terms: FxHashMap::default() }
    }

    pub fn from_diagram(d: TLDiagram, c: R) -> Self {
        let mut m = Self::zero(d.bottom(), d.top());
        m.add_term(d, c);
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(TLDiagram::identity(n), R::one())
    }

    /// `a R_1 + b R_2`.
    pub fn two_box(a: R, b: R) -> Self {
        let mut m = Self::from_diagram(TLDiagram::r1(), a);
        m.add_term(TLDiagram::r2(), b);
        m
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TLDiagram) -> R {
        self.terms.get(d).cloned().unwrap_or_else(R::zero)
    }

    /// Add `c * d`, dropping the entry if it cancels.
    ///
    /// Panics if `d` has the wrong boundary counts.
    pub fn add_term(&mut self, d: TLDiagram, c: R) {
        assert_eq!((d.bottom(), d.top()), (self.bottom, self.top), "boundary mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TlError> {
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(TlError::CountMismatch { upper_bottom: self.bottom, lower_top: other.bottom });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.bottom, self.top);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), x.clone() * c.clone());
        }
        out
    }

    /// `self ∘ lower`, each closed loop contributing a factor `delta`.
    pub fn compose(&self, lower: &Self, delta: &R) -> Result<Self, TlError> {
        if self.bottom != lower.top {
            return Err(TlError::CountMismatch { upper_bottom: self.bottom, lower_top: lower.top });
        }
        let mut out = Self::zero(lower.bottom, self.top);
        for (du, cu) in &self.terms {
            for (dl, cl) in &lower.terms {
                let (d, loops) = du.compose(dl)?;
                out.add_term(d, cu.clone() * cl.clone() * delta.pow(loops as u32));
            }
        }
        Ok(out)
    }

    /// Vertical flip with conjugated coefficients.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero(self.top, self.bottom);
        for (d, c) in &self.terms {
            out.add_term(d.dagger(), c.conj());
        }
        out
    }

    pub fn mirror(&self) -> Self {
        let mut out = Self::zero(self.bottom, self.top);
        for (d, c) in &self.terms {
            out.add_term(d.mirror(), c.clone());
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.bottom + other.bottom, self.top + other.top);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(d1.tensor(d2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// The coefficient of a morphism proportional to the identity (or to
    /// the empty diagram).
    pub fn scalar(&self) -> Option<R> {
        if self.bottom != self.top || self.bottom > 1 {
            return None;
        }
        Some(self.coeff(&TLDiagram::identity(self.bottom)))
    }

    /// Approximate equality of coefficients using `eq` on each entry.
    pub fn equal_by(&self, other: &Self, eq: impl Fn(&R, &R) -> bool) -> bool {
        (self.bottom, self.top) == (other.bottom, other.top)
            && self.terms.keys().chain(other.terms.keys()).all(|d| eq(&self.coeff(d), &other.coeff(d)))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TLMorphism<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        if entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in entries.into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "({c}) [{d}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Quadratic;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_box_square() {
        let (a, b, delta) = (q(2, 3), q(-1, 5), q(7, 4));
        let r = TLMorphism::two_box(a.clone(), b.clone());
        let sq = r.compose(&r, &delta).unwrap();
        let expect = TLMorphism::two_box(a.clone() * a.clone(), q(2, 1) * a * b.clone() + b.clone() * b * delta);
        assert_eq!(sq, expect);
    }

    #[test]
    fn cap_cup_and_identity() {
        let delta = Quadratic::sqrt_int(2).unwrap();
        let cap = TLMorphism::from_diagram(TLDiagram::cap(), Quadratic::integer(1));
        let cup = TLMorphism::from_diagram(TLDiagram::cup(), Quadratic::integer(1));
        assert_eq!(cap.compose(&cup, &delta).unwrap().scalar(), Some(delta.clone()));
        let r = TLMorphism::two_box(Quadratic::integer(3), Quadratic::ratio(1, 2));
        assert_eq!(TLMorphism::identity(2).compose(&r, &delta).unwrap(), r);
        assert_eq!(TLMorphism::<Quadratic>::identity(3).dagger(), TLMorphism::identity(3));
        assert_eq!(cup.dagger(), cap);
        assert!(cap.compose(&r, &delta).is_ok());
        assert!(r.compose(&cap, &delta).is_err());
    }

    fn arb_morphism(bottom: usize, top: usize) -> impl Strategy<Value = TLMorphism<BigRational>> {
        let diagrams = TLDiagram::enumerate(bottom, top);
        let n = diagrams.len();
        prop::collection::vec((0..n, -5i64..6, 1i64..4), 1..5).prop_map(move |entries| {
            let mut m = TLMorphism::zero(bottom, top);
            for (k, num, den) in entries {
                m.add_term(diagrams[k].clone(), q(num, den));
            }
            m
        })
    }

    proptest! {
        #[test]
        fn associativity(x in arb_morphism(4, 2), y in arb_morphism(2, 4), z in arb_morphism(2, 2)) {
            let delta = q(3, 2);
            let lhs = x.compose(&y, &delta).unwrap().compose(&z, &delta).unwrap();
            let rhs = x.compose(&y.compose(&z, &delta).unwrap(), &delta).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dagger_is_anti_multiplicative(x in arb_morphism(3, 1), y in arb_morphism(1, 3)) {
            let delta = q(-2, 3);
            let lhs = x.compose(&y, &delta).unwrap().dagger();
            let rhs = y.dagger().compose(&x.dagger(), &delta).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.dagger().dagger(), x);
        }
    }
}
