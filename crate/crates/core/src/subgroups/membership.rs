use std::fmt;
use std::str::FromStr;

use super::{PrefixMap, SubgroupError};
use crate::coeffs::chromatic_vacuum;
use crate::forests::{BinaryTree, ThompsonElement};
use crate::graphpoly::thompson_graph;
use crate::scalars::Quadratic;

/// One of the two parity sets of dyadic rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParitySet {
    /// Even number of ones before the final digit.
    S,
    /// Even number of zeros before the final digit.
    SigmaS,
}

/// `gS = S` (or `g sigma(S) = sigma(S)`), decided leaf by leaf: `g` maps
/// `.u_i w` to `.v_i w`, which keeps the parity of every such point iff
/// `u_i` and `v_i` carry the same number of ones (zeros) mod 2.
pub fn stabilizes(g: &ThompsonElement, which: ParitySet) -> bool {
    PrefixMap::of(g).stabilizes(which)
}

impl PrefixMap {
    pub fn stabilizes(&self, which: ParitySet) -> bool {
        self.domain.iter().zip(&self.range).all(|(u, v)| match which {
            ParitySet::S => u.ones() % 2 == v.ones() % 2,
            ParitySet::SigmaS => u.zeros() % 2 == v.zeros() % 2,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MembershipMethod {
    /// Leaf parities, see [`stabilizes`].
    Parity,
    /// `Gamma(g)` is bipartite.
    Bipartite,
    /// `phi(g) = 1` at the chromatic point with `t = 2`, exactly.
    Vacuum,
}

impl MembershipMethod {
    pub const ALL: [MembershipMethod; 3] = [Self::Parity, Self::Bipartite, Self::Vacuum];
}

impl fmt::Display for MembershipMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Parity => "parity",
            Self::Bipartite => "bipartite",
            Self::Vacuum => "vacuum",
        })
    }
}

impl FromStr for MembershipMethod {
    type Err = SubgroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "parity" => Ok(Self::Parity),
            "bipartite" => Ok(Self::Bipartite),
            "vacuum" => Ok(Self::Vacuum),
            _ => Err(SubgroupError::UnknownName(s.to_string())),
        }
    }
}

/// Membership in the Jones subgroup, the stabilizer of `S`.
pub fn jones_membership(g: &ThompsonElement, method: MembershipMethod) -> bool {
    match method {
        MembershipMethod::Parity => stabilizes(g, ParitySet::S),
        MembershipMethod::Bipartite => thompson_graph(g).graph.is_bipartite(),
        MembershipMethod::Vacuum => {
            let delta = Quadratic::sqrt_int(2).expect("squarefree");
            chromatic_vacuum(g, &delta).expect("delta^2 = 2") == Quadratic::integer(1)
        }
    }
}

/// Membership in the mirror image of the Jones subgroup, the stabilizer of
/// `sigma(S)`: `g` belongs iff `mirror(g)` is in the Jones subgroup.
pub fn sigma_jones_membership(g: &ThompsonElement, method: MembershipMethod) -> bool {
    match method {
        MembershipMethod::Parity => stabilizes(g, ParitySet::SigmaS),
        m => jones_membership(&g.mirror(), m),
    }
}

/// The product `x0 x1`, which sends `.0a` to `.00a` and `.110a` to `.011a`.
pub fn element_c() -> ThompsonElement {
    ThompsonElement::x0().multiply(&ThompsonElement::generator(1))
}

/// The element sending the leaves `0, 10, 1100, 1101, 111` to
/// `000, 0010, 0011, 01, 1`.
pub fn element_d() -> ThompsonElement {
    let grow = |splits: &[usize]| splits.iter().fold(BinaryTree::leaf(), |t, &i| t.split_leaf(i));
    let range = grow(&[0, 0, 0, 1]);
    let domain = grow(&[0, 1, 2, 2]);
    ThompsonElement::from_pair(range, domain).expect("equal leaf counts")
}
