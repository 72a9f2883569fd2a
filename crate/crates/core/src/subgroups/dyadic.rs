use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SubgroupError;
use crate::forests::{BinaryTree, BitWord, ThompsonElement};

/// A dyadic rational `t = .a_1 ... a_n 1` in `(0, 1)`, stored by its
/// binary word, which always ends in 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    bits: Vec<bool>,
}

impl Dyadic {
    /// Canonical dyadic of a binary expansion; trailing zeros are dropped.
    pub fn from_word(word: &[bool]) -> Result<Self, SubgroupError> {
        let end = word.iter().rposition(|&b| b).ok_or(SubgroupError::NotInInterval)?;
        Ok(Dyadic { bits: word[..=end].to_vec() })
    }

    /// `num / 2^k` for odd or even `num` with `0 < num < 2^k`.
    pub fn from_ratio(num: u64, k: u32) -> Result<Self, SubgroupError> {
        if num == 0 || k > 63 || num >= 1 << k {
            return Err(SubgroupError::NotInInterval);
        }
        let word: Vec<bool> = (0..k).map(|i| num >> (k - 1 - i) & 1 == 1).collect();
        Self::from_word(&word)
    }

    pub fn half() -> Self {
        Dyadic { bits: vec![true] }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `a_1 ... a_n`, the word without its final 1.
    pub fn body(&self) -> &[bool] {
        &self.bits[..self.bits.len() - 1]
    }

    pub fn value(&self) -> BigRational {
        let num = self.bits.iter().fold(BigInt::zero(), |acc, &b| acc * 2 + if b { 1 } else { 0 });
        BigRational::new(num, BigInt::one() << self.bits.len())
    }

    pub fn to_f64(&self) -> f64 {
        self.bits.iter().rev().fold(0.0, |acc, &b| (acc + if b { 1.0 } else { 0.0 }) / 2.0)
    }

    /// Number of zero bits of the word.
    pub fn zero_count(&self) -> usize {
        self.bits.iter().filter(|b| !**b).count()
    }

    /// `1 - t`, i.e. `.a_1...a_n 1 -> .(1-a_1)...(1-a_n) 1`.
    pub fn sigma(&self) -> Self {
        let mut bits: Vec<bool> = self.body().iter().map(|b| !b).collect();
        bits.push(true);
        Dyadic { bits }
    }

    /// Even number of ones among `a_1 ... a_n`.
    pub fn in_s(&self) -> bool {
        self.body().iter().filter(|b| **b).count() % 2 == 0
    }

    /// Even number of zeros among `a_1 ... a_n`.
    pub fn in_sigma_s(&self) -> bool {
        self.body().iter().filter(|b| !**b).count() % 2 == 0
    }
}

pub fn sigma_dyadic(t: &Dyadic) -> Dyadic {
    t.sigma()
}

pub fn in_s(t: &Dyadic) -> bool {
    t.in_s()
}

pub fn in_sigma_s(t: &Dyadic) -> bool {
    t.in_sigma_s()
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(".")?;
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Dyadic {
    type Err = SubgroupError;

    /// `.0101` or `0101`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().strip_prefix('.').unwrap_or(s.trim());
        let word = body
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(SubgroupError::BadDyadic(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_word(&word)
    }
}

/// Leaf substitution table of a tree pair: domain words `u_i` (leaves of
/// the domain tree) and range words `v_i` (leaves of the range tree). The
/// pair need not be reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixMap {
    pub domain: Vec<BitWord>,
    pub range: Vec<BitWord>,
}

impl PrefixMap {
    pub fn of(g: &ThompsonElement) -> Self {
        let (domain, range) = g.prefix_table();
        PrefixMap { domain, range }
    }

    /// Table of the possibly unreduced pair `plus / minus`.
    pub fn from_trees(plus: &BinaryTree, minus: &BinaryTree) -> Result<Self, SubgroupError> {
        if plus.n_leaves() != minus.n_leaves() {
            return Err(SubgroupError::LeafMismatch);
        }
        Ok(PrefixMap { domain: minus.leaf_addresses(), range: plus.leaf_addresses() })
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn apply_word(&self, word: &[bool]) -> Vec<bool> {
        let mut w = word.to_vec();
        loop {
            if let Some(i) = self.domain.iter().position(|u| u.is_prefix_of(&w)) {
                let mut out = self.range[i].0.clone();
                out.extend_from_slice(&w[self.domain[i].len()..]);
                return out;
            }
            w.push(false);
        }
    }

    pub fn apply(&self, t: &Dyadic) -> Dyadic {
        Dyadic::from_word(&self.apply_word(t.bits())).expect("homeomorphisms of (0, 1) preserve (0, 1)")
    }
}

/// The action of `g` on a dyadic rational.
pub fn apply(g: &ThompsonElement, t: &Dyadic) -> Dyadic {
    Dyadic::from_word(&g.rewrite(t.bits())).expect("homeomorphisms of (0, 1) preserve (0, 1)")
}
