use std::ops::Range;

use super::{BinaryTree, ThompsonElement};

/// All trees with a given number of leaves and their sibling masks.
#[derive(Clone, Debug)]
pub struct TreeLevel {
    pub leaves: usize,
    pub trees: Vec<BinaryTree>,
    pub masks: Vec<u64>,
}

/// An enumerated reduced pair together with its position.
#[derive(Clone, Copy, Debug)]
pub struct EnumeratedPair<'a> {
    /// Position in the candidate index space.
    pub index: usize,
    pub leaves: usize,
    pub plus_index: usize,
    pub minus_index: usize,
    pub plus: &'a BinaryTree,
    pub minus: &'a BinaryTree,
}

impl EnumeratedPair<'_> {
    pub fn element(&self) -> ThompsonElement {
        ThompsonElement::from_reduced_unchecked(self.plus.clone(), self.minus.clone())
    }
}

/// Every nontrivial reduced pair with at most `max_leaves` leaves, ordered
/// by leaf count, then plus tree, then minus tree.
///
/// Candidates (all pairs of trees with equal leaf count, at least two
/// leaves) are numbered consecutively, so disjoint index ranges can be
/// handed to different workers.
#[derive(Clone, Debug)]
pub struct ElementEnumerator {
    levels: Vec<TreeLevel>,
    offsets: Vec<usize>,
}

impl ElementEnumerator {
    pub fn new(max_leaves: usize) -> Self {
        assert!(max_leaves <= 64, "sibling masks hold at most 64 leaves");
        let mut levels = Vec::new();
        let mut offsets = vec![0];
        for n in 2..=max_leaves {
            let trees = BinaryTree::all_with_leaves(n);
            let masks = trees.iter().map(BinaryTree::sibling_mask).collect();
            let total = offsets.last().unwrap() + trees.len() * trees.len();
            offsets.push(total);
            levels.push(TreeLevel { leaves: n, trees, masks });
        }
        ElementEnumerator { levels, offsets }
    }

    pub fn levels(&self) -> &[TreeLevel] {
        &self.levels
    }

    pub fn level(&self, leaves: usize) -> Option<&TreeLevel> {
        self.levels.iter().find(|l| l.leaves == leaves)
    }

    /// Size of the candidate index space.
    pub fn candidates(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Reduced pairs whose candidate index lies in `range`, in order.
    pub fn range(&self, range: Range<usize>) -> impl Iterator<Item = EnumeratedPair<'_>> + '_ {
        let end = range.end.min(self.candidates());
        let start = range.start.min(end);
        let first_level = self.offsets.partition_point(|&o| o <= start).saturating_sub(1);
        (first_level..self.levels.len()).flat_map(move |li| {
            let level = &self.levels[li];
            let base = self.offsets[li];
            let m = level.trees.len();
            let lo = start.max(base) - base;
            let hi = end.min(base + m * m).saturating_sub(base).max(lo);
            (lo..hi).filter_map(move |k| {
                let (p, q) = (k / m, k % m);
                (level.masks[p] & level.masks[q] == 0).then(|| EnumeratedPair {
                    index: base + k,
                    leaves: level.leaves,
                    plus_index: p,
                    minus_index: q,
                    plus: &level.trees[p],
                    minus: &level.trees[q],
                })
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = EnumeratedPair<'_>> + '_ {
        self.range(0..self.candidates())
    }

    /// Split the candidate space into `parts` contiguous ranges.
    pub fn chunks(&self, parts: usize) -> Vec<Range<usize>> {
        let total = self.candidates();
        let parts = parts.max(1);
        let step = total.div_ceil(parts).max(1);
        (0..total).step_by(step).map(|s| s..(s + step).min(total)).collect()
    }
}

/// Convenience wrapper: the reduced elements as owned values.
pub fn enumerate_elements(max_leaves: usize) -> Vec<ThompsonElement> {
    ElementEnumerator::new(max_leaves).iter().map(|p| p.element()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(enumerate_elements(1).is_empty());
        assert!(enumerate_elements(2).is_empty());
        let three = enumerate_elements(3);
        let x0 = ThompsonElement::x0();
        assert_eq!(three.len(), 2);
        assert!(three.contains(&x0) && three.contains(&x0.inverse()));
    }

    #[test]
    fn enumerated_pairs_are_reduced_and_distinct() {
        let all = enumerate_elements(6);
        for g in &all {
            let again = ThompsonElement::from_pair(g.plus().clone(), g.minus().clone()).unwrap();
            assert_eq!(&again, g);
            assert!(!g.is_identity());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn ranges_partition_the_stream() {
        let e = ElementEnumerator::new(6);
        let whole: Vec<usize> = e.iter().map(|p| p.index).collect();
        for parts in [1, 3, 7, 1000] {
            let pieces: Vec<usize> =
                e.chunks(parts).into_iter().flat_map(|r| e.range(r).map(|p| p.index).collect::<Vec<_>>()).collect();
            assert_eq!(pieces, whole);
        }
    }

    #[test]
    fn brute_force_count_at_four_leaves() {
        let trees = BinaryTree::all_with_leaves(4);
        let mut brute = 0;
        for p in &trees {
            for m in &trees {
                let g = ThompsonElement::from_pair(p.clone(), m.clone()).unwrap();
                if g.n_leaves() == 4 {
                    brute += 1;
                }
            }
        }
        let e = ElementEnumerator::new(4);
        assert_eq!(e.iter().filter(|p| p.leaves == 4).count(), brute);
    }
}
