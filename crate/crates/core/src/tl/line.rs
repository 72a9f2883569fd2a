//! Compact encoding of `(1, k)` diagrams used in the evaluation hot path.
//!
//! Points are laid on a line: position 0 is the bottom point, positions
//! `1..=k` the top points from left to right. A non-crossing matching on a
//! line is a balanced bracket word, stored as a bitmask with bit `i` set
//! when position `i` opens an arc. Inserting a vertex is inserting an
//! adjacent `()` pair; contracting with a dagger vertex is capping two
//! adjacent points.

use rustc_hash::FxHashMap;

use super::TLDiagram;
use crate::forests::BinaryTree;
use crate::scalars::Ring;

/// Largest number of boundary points supported by [`Word`].
pub const MAX_POINTS: usize = 128;

/// A line diagram as a bracket bitmask.
pub type Word = u128;

/// The single strand `b0 - t0`.
pub const STRAND: Word = 1;

#[inline]
fn bit(w: Word, i: usize) -> bool {
    (w >> i) & 1 == 1
}

#[inline]
fn low_mask(i: usize) -> Word {
    if i >= 128 {
        Word::MAX
    } else {
        (1 << i) - 1
    }
}

/// Insert an arc occupying the new positions `pos, pos + 1`.
#[inline]
pub fn insert_cup(w: Word, pos: usize) -> Word {
    (w & low_mask(pos)) | (1 << pos) | ((w >> pos) << (pos + 2))
}

fn opener_of(w: Word, close: usize) -> usize {
    let mut depth = 0usize;
    for i in (0..close).rev() {
        if bit(w, i) {
            if depth == 0 {
                return i;
            }
            depth -= 1;
        } else {
            depth += 1;
        }
    }
    unreachable!("unbalanced word")
}

fn closer_of(w: Word, open: usize, len: usize) -> usize {
    let mut depth = 0usize;
    for i in open + 1..len {
        if bit(w, i) {
            depth += 1;
        } else if depth == 0 {
            return i;
        } else {
            depth -= 1;
        }
    }
    unreachable!("unbalanced word")
}

/// Join positions `r` and `r + 1` by a cap. Returns the new word and
/// whether a closed loop was removed.
#[inline]
pub fn cap(w: Word, r: usize, len: usize) -> (Word, bool) {
    let s = r + 1;
    let (br, bs) = (bit(w, r), bit(w, s));
    let mut w = w;
    let looped = br && !bs;
    if !br && !bs {
        // y < x < r < s becomes the arc (y, x)
        let x = opener_of(w, r);
        w &= !(1 << x);
    } else if br && bs {
        // r < s < y < x becomes the arc (y, x)
        let y = closer_of(w, s, len);
        w |= 1 << y;
    }
    ((w & low_mask(r)) | ((w >> (r + 2)) << r), looped)
}

/// Partner table of a word with `len` positions.
pub fn partners(w: Word, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    let mut stack = Vec::with_capacity(len / 2);
    for i in 0..len {
        if bit(w, i) {
            stack.push(i);
        } else {
            let j = stack.pop().expect("unbalanced word");
            out[i] = j;
            out[j] = i;
        }
    }
    out
}

/// Line word of a `(1, k)` diagram.
pub fn from_diagram(d: &TLDiagram) -> Option<Word> {
    if d.bottom() != 1 || d.top() + 1 > MAX_POINTS {
        return None;
    }
    // bottom point 0 and top point j sit at line positions 0 and j + 1,
    // which coincide with the diagram's own indices
    Some(
        d.partners()
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p > i)
            .fold(0, |w, (i, _)| w | (1 << i)),
    )
}

pub fn to_diagram(w: Word, len: usize) -> TLDiagram {
    TLDiagram::from_partners_unchecked(1, len - 1, partners(w, len))
}

/// Closed loops formed by gluing the top rows of two `(1, k)` words.
pub fn glued_loops(upper: &[usize], lower: &[usize]) -> usize {
    let len = upper.len();
    let mut seen = vec![false; len];
    seen[0] = true;
    // the through path from bottom to bottom
    let mut p = lower[0];
    loop {
        seen[p] = true;
        let q = upper[p];
        if q == 0 {
            break;
        }
        seen[q] = true;
        p = lower[q];
    }
    let mut loops = 0;
    for start in 1..len {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            let q = upper[p];
            seen[q] = true;
            p = lower[q];
        }
    }
    loops
}

/// Expansion of a tree image: `(word, coefficient)` pairs of `(1, 2n-1)`
/// diagrams, each caret contributing `a` (first vertex diagram) or `b`.
pub fn expand_tree<R: Ring>(tree: &BinaryTree, a: &R, b: &R) -> FxHashMap<Word, R> {
    assert!(2 * tree.n_leaves() <= MAX_POINTS, "tree too large for the line encoding");
    let mut state: FxHashMap<Word, R> = FxHashMap::default();
    state.insert(STRAND, R::one());
    for c in tree.carets() {
        let p = 2 * c.first;
        let mut next: FxHashMap<Word, R> = FxHashMap::default();
        next.reserve(2 * state.len());
        for (w, coef) in state {
            accumulate(&mut next, insert_cup(w, p + 2), coef.clone() * a.clone());
            accumulate(&mut next, insert_cup(w, p + 1), coef * b.clone());
        }
        state = next;
    }
    state
}

#[inline]
fn accumulate<R: Ring>(map: &mut FxHashMap<Word, R>, w: Word, c: R) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = std::mem::replace(e.get_mut(), R::zero()) + c;
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

/// Contract an expansion with the dagger of a tree image: the scalar of
/// `Phi(tree)^† ∘ state`.
pub fn contract_tree<R: Ring>(state: FxHashMap<Word, R>, tree: &BinaryTree, delta: &R, a: &R, b: &R) -> R {
    let (ac, bc) = (a.conj(), b.conj());
    let carets = tree.carets();
    let mut len = 2 * tree.n_leaves();
    let mut state = state;
    for c in carets.iter().rev() {
        let p = 2 * c.first;
        let mut next: FxHashMap<Word, R> = FxHashMap::default();
        next.reserve(state.len());
        for (w, coef) in state {
            let (w1, l1) = cap(w, p + 2, len);
            let c1 = coef.clone() * ac.clone();
            accumulate(&mut next, w1, if l1 { c1 * delta.clone() } else { c1 });
            let (w2, l2) = cap(w, p + 1, len);
            let c2 = coef * bc.clone();
            accumulate(&mut next, w2, if l2 { c2 * delta.clone() } else { c2 });
        }
        state = next;
        len -= 2;
    }
    debug_assert!(state.len() <= 1);
    state.remove(&STRAND).unwrap_or_else(R::zero)
}

/// `Phi(plus)^† ∘ Phi(minus)` for the vertex `a D1 + b D2` and loop value `delta`.
pub fn tree_pairing<R: Ring>(plus: &BinaryTree, minus: &BinaryTree, delta: &R, a: &R, b: &R) -> R {
    assert_eq!(plus.n_leaves(), minus.n_leaves(), "trees must have equal leaf counts");
    contract_tree(expand_tree(minus, a, b), plus, delta, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cup_insertion_matches_diagrams() {
        // D1 at strand 0 of the single strand: b0-t0, t1-t2
        let w = insert_cup(STRAND, 2);
        assert_eq!(to_diagram(w, 4), TLDiagram::from_pairs(1, 3, &[(0, 1), (2, 3)]).unwrap());
        // D2: b0-t2, t0-t1
        let w = insert_cup(STRAND, 1);
        assert_eq!(to_diagram(w, 4), TLDiagram::from_pairs(1, 3, &[(0, 3), (1, 2)]).unwrap());
    }

    #[test]
    fn caps_against_path_tracing() {
        // every (1, 5) diagram capped at every adjacent pair agrees with
        // composing the general cap diagram
        for d in TLDiagram::enumerate(1, 5) {
            let w = from_diagram(&d).unwrap();
            for r in 1..5 {
                let (w2, looped) = cap(w, r, 6);
                let mut capper = TLDiagram::identity(r - 1).tensor(&TLDiagram::cap());
                capper = capper.tensor(&TLDiagram::identity(5 - r - 1));
                let (expect, loops) = capper.compose(&d).unwrap();
                assert_eq!(to_diagram(w2, 4), expect);
                assert_eq!(looped as usize, loops);
            }
        }
    }

    #[test]
    fn round_trip() {
        for d in TLDiagram::enumerate(1, 7) {
            let w = from_diagram(&d).unwrap();
            assert_eq!(to_diagram(w, 8), d);
        }
    }

    #[test]
    fn glued_loop_count() {
        for u in TLDiagram::enumerate(1, 5) {
            for l in TLDiagram::enumerate(1, 5) {
                let (_, loops) = u.dagger().compose(&l).unwrap();
                assert_eq!(glued_loops(u.partners(), l.partners()), loops);
            }
        }
    }
}
