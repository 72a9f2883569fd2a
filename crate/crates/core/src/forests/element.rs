use std::fmt;
use std::str::FromStr;

use super::{BinaryTree, BitWord, ForestError};

/// An element of F as a reduced pair of trees.
///
/// `plus` is the range tree and `minus` the domain tree: the element maps
/// the interval of the `i`-th leaf of `minus` affinely onto the interval of
/// the `i`-th leaf of `plus`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThompsonElement {
    plus: BinaryTree,
    minus: BinaryTree,
}

/// Cancel carets common to both leaf lists until none is left.
fn reduce_addresses(plus: &mut Vec<BitWord>, minus: &mut Vec<BitWord>) {
    let is_pair = |a: &BitWord, b: &BitWord| {
        !a.is_empty() && a.len() == b.len() && !a[a.len() - 1] && b[b.len() - 1] && a[..a.len() - 1] == b[..b.len() - 1]
    };
    let mut i = 0;
    while i + 1 < plus.len() {
        if is_pair(&plus[i], &plus[i + 1]) && is_pair(&minus[i], &minus[i + 1]) {
            for list in [&mut *plus, &mut *minus] {
                list.remove(i + 1);
                list[i].0.pop();
            }
            // a new pair can only appear just to the left
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
}

/// For each leaf `u` of `tree`, the suffixes of the leaves of `big` below `u`.
fn expansions(tree: &[BitWord], big: &[BitWord]) -> Vec<Vec<Vec<bool>>> {
    let mut out = Vec::with_capacity(tree.len());
    let mut j = 0;
    for u in tree {
        let mut here = Vec::new();
        while j < big.len() && u.is_prefix_of(&big[j]) {
            here.push(big[j][u.len()..].to_vec());
            j += 1;
        }
        out.push(here);
    }
    out
}

impl ThompsonElement {
    pub fn identity() -> Self {
        ThompsonElement { plus: BinaryTree::leaf(), minus: BinaryTree::leaf() }
    }

    /// The fraction `plus / minus`, reduced.
    pub fn from_pair(plus: BinaryTree, minus: BinaryTree) -> Result<Self, ForestError> {
        if plus.n_leaves() != minus.n_leaves() {
            return Err(ForestError::LeafMismatch(plus.n_leaves(), minus.n_leaves()));
        }
        let mut p = plus.leaf_addresses();
        let mut m = minus.leaf_addresses();
        reduce_addresses(&mut p, &mut m);
        Ok(Self::from_reduced_addresses(&p, &m))
    }

    /// Wrap a pair already known to be reduced.
    pub(crate) fn from_reduced_unchecked(plus: BinaryTree, minus: BinaryTree) -> Self {
        ThompsonElement { plus, minus }
    }

    fn from_reduced_addresses(plus: &[BitWord], minus: &[BitWord]) -> Self {
        ThompsonElement {
            plus: BinaryTree::from_leaf_addresses(plus).expect("valid prefix code"),
            minus: BinaryTree::from_leaf_addresses(minus).expect("valid prefix code"),
        }
    }

    /// The pair of leaf address lists, `(domain, range)`.
    pub fn prefix_table(&self) -> (Vec<BitWord>, Vec<BitWord>) {
        (self.minus.leaf_addresses(), self.plus.leaf_addresses())
    }

    pub fn plus(&self) -> &BinaryTree {
        &self.plus
    }

    pub fn minus(&self) -> &BinaryTree {
        &self.minus
    }

    pub fn n_leaves(&self) -> usize {
        self.plus.n_leaves()
    }

    pub fn is_identity(&self) -> bool {
        self.plus.is_leaf()
    }

    /// `x_0 = ((Y•|)∘Y) / ((|•Y)∘Y)`.
    pub fn x0() -> Self {
        ThompsonElement { plus: "11000".parse().unwrap(), minus: "10100".parse().unwrap() }
    }

    /// The generator `x_n`, obtained by shifting `x_0` `n` times.
    pub fn generator(n: usize) -> Self {
        (0..n).fold(Self::x0(), |g, _| g.shift())
    }

    pub fn inverse(&self) -> Self {
        ThompsonElement { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn multiply(&self, other: &Self) -> Self {
        let j = self.minus.join(&other.plus);
        let jl = j.leaf_addresses();
        let (gm, gp) = self.prefix_table();
        let (hm, hp) = other.prefix_table();
        let expand = |from: &[BitWord], to: &[BitWord]| -> Vec<BitWord> {
            expansions(from, &jl)
                .iter()
                .zip(to)
                .flat_map(|(sufs, v)| sufs.iter().map(move |s| v.concat(s)))
                .collect()
        };
        let mut plus = expand(&gm, &gp);
        let mut minus = expand(&hp, &hm);
        reduce_addresses(&mut plus, &mut minus);
        Self::from_reduced_addresses(&plus, &minus)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| acc.multiply(&base))
    }

    /// The shift endomorphism `t/s ↦ (|•t)∘Y / (|•s)∘Y`.
    pub fn shift(&self) -> Self {
        if self.is_identity() {
            return self.clone();
        }
        let bar = BinaryTree::leaf();
        ThompsonElement {
            plus: BinaryTree::join_at_root(&bar, &self.plus),
            minus: BinaryTree::join_at_root(&bar, &self.minus),
        }
    }

    /// Conjugation by `x ↦ 1 - x`: reflect both trees.
    pub fn mirror(&self) -> Self {
        ThompsonElement { plus: self.plus.mirror(), minus: self.minus.mirror() }
    }

    /// `s/t ↦ (s•σ(s))∘Y / (t•σ(t))∘Y`, a mirror-symmetric element.
    pub fn alpha_double(&self) -> Self {
        if self.is_identity() {
            return self.clone();
        }
        ThompsonElement {
            plus: BinaryTree::join_at_root(&self.plus, &self.plus.mirror()),
            minus: BinaryTree::join_at_root(&self.minus, &self.minus.mirror()),
        }
    }

    /// Prefix substitution on a binary expansion, zero padding the input
    /// until a domain leaf matches. Trailing zeros are kept.
    pub fn rewrite(&self, word: &[bool]) -> Vec<bool> {
        let (dom, ran) = self.prefix_table();
        let mut w = word.to_vec();
        loop {
            if let Some(i) = dom.iter().position(|u| u.is_prefix_of(&w)) {
                let mut out = ran[i].0.clone();
                out.extend_from_slice(&w[dom[i].len()..]);
                return out;
            }
            w.push(false);
        }
    }
}

fn parse_word(src: &str) -> Result<ThompsonElement, ForestError> {
    let bad = |tok: &str| ForestError::BadWord(tok.to_string());
    let mut acc = ThompsonElement::identity();
    for tok in src.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty()) {
        let body = tok.strip_prefix('x').ok_or_else(|| bad(tok))?;
        let body = body.strip_prefix('_').unwrap_or(body);
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.trim_start_matches('{').trim_end_matches('}')),
            None => (body, "1"),
        };
        let idx: usize = idx.parse().map_err(|_| bad(tok))?;
        let exp: i64 = exp.parse().map_err(|_| bad(tok))?;
        acc = acc.multiply(&ThompsonElement::generator(idx).pow(exp));
    }
    Ok(acc)
}

impl FromStr for ThompsonElement {
    type Err = ForestError;

    /// Either a word such as `x0 x1^-1 x0^2` (empty for the identity) or an
    /// explicit pair `pair:<plus preorder>,<minus preorder>`.
    fn from_str(s: &str) -> Result<Self, ForestError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("pair:") {
            let (p, m) = rest.split_once(',').ok_or_else(|| ForestError::BadWord(s.to_string()))?;
            return ThompsonElement::from_pair(p.trim().parse()?, m.trim().parse()?);
        }
        parse_word(s)
    }
}

impl fmt::Display for ThompsonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair:{},{}", self.plus, self.minus)
    }
}
