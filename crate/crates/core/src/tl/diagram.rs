use std::fmt;

use super::TlError;

/// A non-crossing perfect matching between `bottom` points and `top` points.
///
/// Points are indexed `0..bottom` for the bottom row (left to right) and
/// `bottom..bottom+top` for the top row (left to right). Planarity is
/// checked in the circular order bottom left to right, then top right to
/// left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

impl TLDiagram {
    /// Build from a partner table, validating it.
    pub fn from_partners(bottom: usize, top: usize, partner: Vec<usize>) -> Result<Self, TlError> {
        let d = TLDiagram { bottom, top, partner };
        d.validate()?;
        Ok(d)
    }

    /// Build from a list of unordered pairs of point indices.
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(usize, usize)]) -> Result<Self, TlError> {
        let n = bottom + top;
        let mut partner = vec![usize::MAX; n];
        for &(x, y) in pairs {
            if x >= n || y >= n || x == y || partner[x] != usize::MAX || partner[y] != usize::MAX {
                return Err(TlError::NotMatching);
            }
            partner[x] = y;
            partner[y] = x;
        }
        Self::from_partners(bottom, top, partner)
    }

    pub(crate) fn from_partners_unchecked(bottom: usize, top: usize, partner: Vec<usize>) -> Self {
        TLDiagram { bottom, top, partner }
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        TLDiagram { bottom: n, top: n, partner }
    }

    /// The (0, 2) cup.
    pub fn cup() -> Self {
        TLDiagram { bottom: 0, top: 2, partner: vec![1, 0] }
    }

    /// The (2, 0) cap.
    pub fn cap() -> Self {
        TLDiagram { bottom: 2, top: 0, partner: vec![1, 0] }
    }

    /// `| |` on two strands.
    pub fn r1() -> Self {
        Self::identity(2)
    }

    /// Cup over cap on two strands.
    pub fn r2() -> Self {
        TLDiagram { bottom: 2, top: 2, partner: vec![1, 0, 3, 2] }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point]
    }

    /// Index of the bottom point `i`.
    pub fn bottom_point(&self, i: usize) -> usize {
        i
    }

    /// Index of the top point `j`.
    pub fn top_point(&self, j: usize) -> usize {
        self.bottom + j
    }

    /// Position of a point in the circular order.
    fn circular(&self, point: usize) -> usize {
        if point < self.bottom {
            point
        } else {
            self.bottom + (self.top - 1 - (point - self.bottom))
        }
    }

    pub fn is_non_crossing(&self) -> bool {
        let n = self.partner.len();
        let mut by_pos = vec![0usize; n];
        for p in 0..n {
            by_pos[self.circular(p)] = p;
        }
        let mut stack = Vec::new();
        for &p in &by_pos {
            let q = self.partner[p];
            if self.circular(q) > self.circular(p) {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    fn validate(&self) -> Result<(), TlError> {
        let n = self.bottom + self.top;
        if n % 2 != 0 {
            return Err(TlError::OddBoundary(self.bottom, self.top));
        }
        if self.partner.len() != n
            || self.partner.iter().enumerate().any(|(i, &p)| p >= n || p == i || self.partner[p] != i)
        {
            return Err(TlError::NotMatching);
        }
        if !self.is_non_crossing() {
            return Err(TlError::Crossing);
        }
        Ok(())
    }

    /// Every diagram from `bottom` to `top` points.
    pub fn enumerate(bottom: usize, top: usize) -> Vec<TLDiagram> {
        let n = bottom + top;
        if n % 2 != 0 {
            return Vec::new();
        }
        // non-crossing matchings of the circle positions 0..n
        fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
            if lo >= hi {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for j in (lo + 1..hi).step_by(2) {
                let inner = rec(lo + 1, j);
                let outer = rec(j + 1, hi);
                for a in &inner {
                    for b in &outer {
                        let mut m = Vec::with_capacity(a.len() + b.len() + 1);
                        m.push((lo, j));
                        m.extend_from_slice(a);
                        m.extend_from_slice(b);
                        out.push(m);
                    }
                }
            }
            out
        }
        let point_at = |pos: usize| if pos < bottom { pos } else { bottom + (top - 1 - (pos - bottom)) };
        rec(0, n)
            .into_iter()
            .map(|m| {
                let mut partner = vec![0; n];
                for (x, y) in m {
                    let (px, py) = (point_at(x), point_at(y));
                    partner[px] = py;
                    partner[py] = px;
                }
                TLDiagram { bottom, top, partner }
            })
            .collect()
    }

    /// Vertical flip: top and bottom rows exchanged.
    pub fn dagger(&self) -> Self {
        let (m, n) = (self.bottom, self.top);
        let map = |p: usize| if p < m { n + p } else { p - m };
        let mut partner = vec![0; m + n];
        for p in 0..m + n {
            partner[map(p)] = map(self.partner[p]);
        }
        TLDiagram { bottom: n, top: m, partner }
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> Self {
        let (m, n) = (self.bottom, self.top);
        let map = |p: usize| if p < m { m - 1 - p } else { m + (n - 1 - (p - m)) };
        let mut partner = vec![0; m + n];
        for p in 0..m + n {
            partner[map(p)] = map(self.partner[p]);
        }
        TLDiagram { bottom: m, top: n, partner }
    }

    /// Horizontal juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let (m1, n1, m2, n2) = (self.bottom, self.top, other.bottom, other.top);
        let left = |p: usize| if p < m1 { p } else { m1 + m2 + (p - m1) };
        let right = |p: usize| if p < m2 { m1 + p } else { m1 + m2 + n1 + (p - m2) };
        let mut partner = vec![0; m1 + m2 + n1 + n2];
        for p in 0..m1 + n1 {
            partner[left(p)] = left(self.partner[p]);
        }
        for p in 0..m2 + n2 {
            partner[right(p)] = right(other.partner[p]);
        }
        TLDiagram { bottom: m1 + m2, top: n1 + n2, partner }
    }

    /// Stack `self` on top of `lower`; returns the diagram and the number
    /// of closed loops removed.
    pub fn compose(&self, lower: &TLDiagram) -> Result<(TLDiagram, usize), TlError> {
        if self.bottom != lower.top {
            return Err(TlError::CountMismatch { upper_bottom: self.bottom, lower_top: lower.top });
        }
        let (ml, mid, nu) = (lower.bottom, lower.top, self.top);
        let mut partner = vec![usize::MAX; ml + nu];
        let mut seen = vec![false; mid];
        // a point of the result is either lower-bottom i or upper-top j
        enum At {
            Lower(usize),
            Upper(usize),
        }
        let mut trace = |start: At| -> usize {
            let mut at = start;
            loop {
                match at {
                    At::Lower(p) => {
                        let q = lower.partner[p];
                        if q < ml {
                            return q;
                        }
                        seen[q - ml] = true;
                        at = At::Upper(q - ml);
                    }
                    At::Upper(p) => {
                        let q = self.partner[p];
                        if q >= mid {
                            return ml + (q - mid);
                        }
                        seen[q] = true;
                        at = At::Lower(ml + q);
                    }
                }
            }
        };
        for i in 0..ml {
            if partner[i] == usize::MAX {
                let e = trace(At::Lower(i));
                partner[i] = e;
                partner[e] = i;
            }
        }
        for j in 0..nu {
            let p = ml + j;
            if partner[p] == usize::MAX {
                let e = trace(At::Upper(mid + j));
                partner[p] = e;
                partner[e] = p;
            }
        }
        let mut loops = 0;
        for k in 0..mid {
            if seen[k] {
                continue;
            }
            loops += 1;
            let mut cur = k;
            loop {
                seen[cur] = true;
                // middle point cur: across the upper diagram, then the lower one
                let up = self.partner[cur];
                seen[up] = true;
                cur = lower.partner[ml + up] - ml;
                if seen[cur] {
                    break;
                }
            }
        }
        Ok((TLDiagram { bottom: ml, top: nu, partner }, loops))
    }
}

impl fmt::Display for TLDiagram {
    /// Pairing list such as `b0-t0 t1-t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |p: usize| if p < self.bottom { format!("b{p}") } else { format!("t{}", p - self.bottom) };
        let mut first = true;
        for p in 0..self.partner.len() {
            let q = self.partner[p];
            if q > p {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{}-{}", name(p), name(q))?;
            }
        }
        if first {
            f.write_str("empty")?;
        }
        Ok(())
    }
}
