use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{GraphError, Multigraph};
use crate::scalars::BivarPolynomial;

thread_local! {
    static MEMO: RefCell<FxHashMap<Multigraph, BivarPolynomial>> = RefCell::new(FxHashMap::default());
}

const MEMO_CAP: usize = 1 << 18;

/// Tutte polynomial of a connected multigraph.
///
/// Whole parallel classes are removed at once, the largest class first: a
/// class of `k` copies of `uv` over the rest `H` contributes
/// `T(H) + (1 + y + ... + y^(k-1)) T(H/uv)`, or
/// `(x + y + ... + y^(k-1)) T(H/uv)` when it is a bridge class.
pub fn tutte(g: &Multigraph) -> Result<BivarPolynomial, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(tutte_connected(g))
}

fn geometric_y(from: u32, to: u32) -> BivarPolynomial {
    let mut p = BivarPolynomial::zero();
    for k in from..to {
        p.add_term(0, k, BigInt::one());
    }
    p
}

fn tutte_connected(g: &Multigraph) -> BivarPolynomial {
    let loops = g.loop_count() as u32;
    if loops > 0 {
        let rest = Multigraph::new(g.vertex_count(), g.edges().iter().copied().filter(|(u, v)| u != v)).expect("same vertices");
        return tutte_connected(&rest).shifted(0, loops);
    }
    if g.edge_count() == 0 {
        return BivarPolynomial::one();
    }
    if let Some(p) = MEMO.with(|m| m.borrow().get(g).cloned()) {
        return p;
    }
    let edges = g.edges();
    // largest parallel class; edges are sorted so classes are runs
    let (mut best, mut best_len, mut i) = (0, 0, 0);
    while i < edges.len() {
        let j = i + edges[i..].iter().take_while(|e| **e == edges[i]).count();
        if j - i > best_len {
            best = i;
            best_len = j - i;
        }
        i = j;
    }
    let (u, v) = edges[best];
    let k = best_len as u32;
    let h = Multigraph::new(g.vertex_count(), edges[..best].iter().chain(&edges[best + best_len..]).copied()).expect("same vertices");
    let quotient = tutte_connected(&h.identify(&[u, v]));
    let p = if h.is_connected() {
        tutte_connected(&h) + geometric_y(0, k) * quotient
    } else {
        (BivarPolynomial::x() + geometric_y(1, k)) * quotient
    };
    MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_CAP {
            m.clear();
        }
        m.insert(g.clone(), p.clone());
    });
    p
}
