use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use super::ForestError;

/// A finite word over `{0, 1}`; `0` is the left branch.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitWord(pub Vec<bool>);

impl BitWord {
    pub fn empty() -> Self {
        BitWord(Vec::new())
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut w = self.0.clone();
        w.push(bit);
        BitWord(w)
    }

    pub fn is_prefix_of(&self, other: &[bool]) -> bool {
        other.len() >= self.0.len() && other[..self.0.len()] == self.0[..]
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn zeros(&self) -> usize {
        self.0.len() - self.ones()
    }

    pub fn concat(&self, suffix: &[bool]) -> Self {
        let mut w = self.0.clone();
        w.extend_from_slice(suffix);
        BitWord(w)
    }

    pub fn flipped(&self) -> Self {
        BitWord(self.0.iter().map(|b| !b).collect())
    }
}

impl Deref for BitWord {
    type Target = [bool];
    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn parse_bits(s: &str) -> Result<Vec<bool>, ForestError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(ForestError::BadBits(s.to_string())),
        })
        .collect()
}

impl FromStr for BitWord {
    type Err = ForestError;
    fn from_str(s: &str) -> Result<Self, ForestError> {
        parse_bits(s).map(BitWord)
    }
}

/// One caret of a tree, described by the leaves below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caret {
    /// Index of the leftmost leaf under the caret.
    pub first: usize,
    /// Index of the leftmost leaf of the right subtree.
    pub split: usize,
    /// One past the rightmost leaf.
    pub end: usize,
}

/// Planar binary tree stored as its preorder bit string (`1` caret, `0` leaf).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryTree {
    bits: Vec<bool>,
}

fn subtree_end(bits: &[bool], mut i: usize) -> usize {
    let mut need = 1usize;
    while need > 0 {
        if bits[i] {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    i
}

impl BinaryTree {
    /// The trivial tree `|`.
    pub fn leaf() -> Self {
        BinaryTree { bits: vec![false] }
    }

    /// The tree `Y` with two leaves.
    pub fn caret() -> Self {
        BinaryTree { bits: vec![true, false, false] }
    }

    /// Tree whose root has the given left and right subtrees.
    pub fn join_at_root(left: &BinaryTree, right: &BinaryTree) -> Self {
        let mut bits = Vec::with_capacity(1 + left.bits.len() + right.bits.len());
        bits.push(true);
        bits.extend_from_slice(&left.bits);
        bits.extend_from_slice(&right.bits);
        BinaryTree { bits }
    }

    pub fn from_preorder(bits: Vec<bool>) -> Result<Self, ForestError> {
        let bad = || ForestError::BadPreorder(bits.iter().map(|&b| if b { '1' } else { '0' }).collect());
        let mut need = 1usize;
        for (i, &b) in bits.iter().enumerate() {
            if need == 0 {
                return Err(bad());
            }
            if b {
                need += 1;
            } else {
                need -= 1;
            }
            if need == 0 && i + 1 != bits.len() {
                return Err(bad());
            }
        }
        if need != 0 {
            return Err(bad());
        }
        Ok(BinaryTree { bits })
    }

    pub fn preorder(&self) -> &[bool] {
        &self.bits
    }

    pub fn n_leaves(&self) -> usize {
        self.bits.iter().filter(|&&b| !b).count()
    }

    pub fn n_carets(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn is_leaf(&self) -> bool {
        self.bits.len() == 1
    }

    /// Left and right subtrees of the root, `None` for the trivial tree.
    pub fn children(&self) -> Option<(BinaryTree, BinaryTree)> {
        if self.is_leaf() {
            return None;
        }
        let mid = subtree_end(&self.bits, 1);
        Some((
            BinaryTree { bits: self.bits[1..mid].to_vec() },
            BinaryTree { bits: self.bits[mid..].to_vec() },
        ))
    }

    /// Leaf addresses, left to right.
    pub fn leaf_addresses(&self) -> Vec<BitWord> {
        let mut out = Vec::with_capacity(self.n_leaves());
        let mut path: Vec<bool> = Vec::new();
        for &b in &self.bits {
            if b {
                path.push(false);
                continue;
            }
            out.push(BitWord(path.clone()));
            while path.last() == Some(&true) {
                path.pop();
            }
            if let Some(last) = path.last_mut() {
                *last = true;
            }
        }
        out
    }

    /// Addresses of the carets in preorder.
    pub fn caret_addresses(&self) -> Vec<BitWord> {
        let mut out = Vec::with_capacity(self.n_carets());
        let mut path: Vec<bool> = Vec::new();
        for &b in &self.bits {
            if b {
                out.push(BitWord(path.clone()));
                path.push(false);
                continue;
            }
            while path.last() == Some(&true) {
                path.pop();
            }
            if let Some(last) = path.last_mut() {
                *last = true;
            }
        }
        out
    }

    /// Rebuild a tree from its leaves; the list must be a complete prefix
    /// code in left-to-right order.
    pub fn from_leaf_addresses(addrs: &[BitWord]) -> Result<Self, ForestError> {
        fn build(prefix: &mut Vec<bool>, addrs: &[BitWord], out: &mut Vec<bool>) -> bool {
            match addrs {
                [] => false,
                [only] if only.0 == *prefix => {
                    out.push(false);
                    true
                }
                _ => {
                    let depth = prefix.len();
                    if addrs.iter().any(|a| a.len() <= depth) {
                        return false;
                    }
                    let cut = addrs.partition_point(|a| !a.0[depth]);
                    out.push(true);
                    prefix.push(false);
                    let ok = build(prefix, &addrs[..cut], out);
                    *prefix.last_mut().unwrap() = true;
                    let ok = ok && build(prefix, &addrs[cut..], out);
                    prefix.pop();
                    ok
                }
            }
        }
        if !addrs.windows(2).all(|w| w[0] < w[1]) {
            return Err(ForestError::NotPrefixCode);
        }
        let mut out = Vec::new();
        if build(&mut Vec::new(), addrs, &mut out) {
            Ok(BinaryTree { bits: out })
        } else {
            Err(ForestError::NotPrefixCode)
        }
    }

    /// Carets in preorder with the leaf ranges they span.
    pub fn carets(&self) -> Vec<Caret> {
        fn walk(bits: &[bool], i: usize, first: usize, out: &mut Vec<Caret>) -> (usize, usize) {
            if !bits[i] {
                return (i + 1, first + 1);
            }
            let slot = out.len();
            out.push(Caret { first, split: 0, end: 0 });
            let (j, split) = walk(bits, i + 1, first, out);
            let (k, end) = walk(bits, j, split, out);
            out[slot].split = split;
            out[slot].end = end;
            (k, end)
        }
        let mut out = Vec::with_capacity(self.n_carets());
        walk(&self.bits, 0, 0, &mut out);
        out
    }

    /// Indices `i` such that leaves `i, i+1` hang from a common caret.
    pub fn sibling_leaves(&self) -> Vec<usize> {
        self.carets()
            .into_iter()
            .filter(|c| c.split == c.first + 1 && c.end == c.split + 1)
            .map(|c| c.first)
            .collect()
    }

    /// Bitmask of [`Self::sibling_leaves`]; trees must have at most 64 leaves.
    pub fn sibling_mask(&self) -> u64 {
        self.sibling_leaves().into_iter().fold(0, |m, i| m | 1 << i)
    }

    /// Smallest tree containing the carets of both trees.
    pub fn join(&self, other: &BinaryTree) -> BinaryTree {
        fn rec(a: &[bool], ia: usize, b: &[bool], ib: usize, out: &mut Vec<bool>) -> (usize, usize) {
            match (a[ia], b[ib]) {
                (false, false) => {
                    out.push(false);
                    (ia + 1, ib + 1)
                }
                (false, true) => {
                    let e = subtree_end(b, ib);
                    out.extend_from_slice(&b[ib..e]);
                    (ia + 1, e)
                }
                (true, false) => {
                    let e = subtree_end(a, ia);
                    out.extend_from_slice(&a[ia..e]);
                    (e, ib + 1)
                }
                (true, true) => {
                    out.push(true);
                    let (ja, jb) = rec(a, ia + 1, b, ib + 1, out);
                    rec(a, ja, b, jb, out)
                }
            }
        }
        let mut out = Vec::with_capacity(self.bits.len().max(other.bits.len()));
        rec(&self.bits, 0, &other.bits, 0, &mut out);
        BinaryTree { bits: out }
    }

    /// Reflection in a vertical line.
    pub fn mirror(&self) -> BinaryTree {
        fn rec(bits: &[bool], i: usize, out: &mut Vec<bool>) -> usize {
            if !bits[i] {
                out.push(false);
                return i + 1;
            }
            let mid = subtree_end(bits, i + 1);
            let end = subtree_end(bits, mid);
            out.push(true);
            rec(bits, mid, out);
            rec(bits, i + 1, out);
            end
        }
        let mut out = Vec::with_capacity(self.bits.len());
        rec(&self.bits, 0, &mut out);
        BinaryTree { bits: out }
    }

    /// Replace leaf `i` by a caret.
    pub fn split_leaf(&self, i: usize) -> BinaryTree {
        let mut seen = 0;
        let mut bits = Vec::with_capacity(self.bits.len() + 2);
        for &b in &self.bits {
            if !b {
                if seen == i {
                    bits.extend_from_slice(&[true, false, false]);
                    seen += 1;
                    continue;
                }
                seen += 1;
            }
            bits.push(b);
        }
        assert!(i < seen, "leaf {i} out of range");
        BinaryTree { bits }
    }

    /// Grow a tree from the trivial one by splitting leaf `s mod n` for
    /// each entry of `splits`. Handy for generating test trees.
    pub fn from_splits(splits: &[usize]) -> BinaryTree {
        let mut t = BinaryTree::leaf();
        for (n, &s) in splits.iter().enumerate() {
            t = t.split_leaf(s % (n + 1));
        }
        t
    }

    /// Every tree with `n` leaves, in a fixed order.
    pub fn all_with_leaves(n: usize) -> Vec<BinaryTree> {
        let mut table: Vec<Vec<BinaryTree>> = vec![Vec::new(), vec![BinaryTree::leaf()]];
        for m in 2..=n {
            let mut level = Vec::new();
            for k in 1..m {
                for l in &table[k] {
                    for r in &table[m - k] {
                        level.push(BinaryTree::join_at_root(l, r));
                    }
                }
            }
            table.push(level);
        }
        if n == 0 {
            return Vec::new();
        }
        table.swap_remove(n)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryTree {
    type Err = ForestError;
    fn from_str(s: &str) -> Result<Self, ForestError> {
        BinaryTree::from_preorder(parse_bits(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn catalan(n: usize) -> usize {
        (0..n).fold(1usize, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn addresses_of_the_three_leaf_trees() {
        let left: BinaryTree = "11000".parse().unwrap();
        let right: BinaryTree = "10100".parse().unwrap();
        assert_eq!(left.leaf_addresses(), vec![w("00"), w("01"), w("1")]);
        assert_eq!(right.leaf_addresses(), vec![w("0"), w("10"), w("11")]);
        assert_eq!(right.caret_addresses(), vec![w(""), w("1")]);
        assert_eq!(BinaryTree::from_leaf_addresses(&left.leaf_addresses()).unwrap(), left);
    }

    #[test]
    fn malformed_inputs() {
        assert!("1".parse::<BinaryTree>().is_err());
        assert!("100".parse::<BinaryTree>().is_ok());
        assert!("1000".parse::<BinaryTree>().is_err());
        assert!("10a".parse::<BinaryTree>().is_err());
        assert!(BinaryTree::from_leaf_addresses(&[w("0"), w("11")]).is_err());
        assert!(BinaryTree::from_leaf_addresses(&[w("1"), w("0")]).is_err());
    }

    #[test]
    fn join_overlays_caret_sets() {
        let left: BinaryTree = "11000".parse().unwrap();
        let right: BinaryTree = "10100".parse().unwrap();
        let j = left.join(&right);
        assert_eq!(j.to_string(), "1100100");
        assert_eq!(j.n_leaves(), 4);
        assert_eq!(left.join(&BinaryTree::leaf()), left);
    }

    #[test]
    fn mirror_and_carets() {
        let left: BinaryTree = "11000".parse().unwrap();
        assert_eq!(left.mirror().to_string(), "10100");
        let t: BinaryTree = "111001000".parse().unwrap();
        assert_eq!(t.mirror().mirror(), t);
        let c = t.carets();
        assert_eq!(c[0], Caret { first: 0, split: 4, end: 5 });
        assert_eq!(c[1], Caret { first: 0, split: 2, end: 4 });
        assert_eq!(t.sibling_leaves(), [0, 2]);
    }

    #[test]
    fn tree_counts_are_catalan() {
        for n in 1..=10 {
            let all = BinaryTree::all_with_leaves(n);
            assert_eq!(all.len(), catalan(n - 1), "n = {n}");
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            assert!(all.iter().all(|t| t.n_leaves() == n));
        }
    }

    #[test]
    fn splits_build_trees() {
        assert_eq!(BinaryTree::from_splits(&[0, 0]).to_string(), "11000");
        assert_eq!(BinaryTree::from_splits(&[0, 1]).to_string(), "10100");
    }
}
