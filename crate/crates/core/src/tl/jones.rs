use super::{line, TLDiagram, TLMorphism, TlError};
use crate::forests::{BinaryTree, Forest};
use crate::scalars::{Ring, Scalar};

/// Parameters `(delta, a, b)` of the two-box element `R = a R_1 + b R_2`.
///
/// The physical vertex coefficients are `sqrt(gauge) * (a, b)` for a real
/// `gauge > 0`. Keeping the square root symbolic lets parameter families
/// such as the chromatic point stay inside a single quadratic field: every
/// vacuum coefficient of an `n`-leaf pair picks up exactly `gauge^(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSpec<S> {
    pub delta: S,
    pub a: S,
    pub b: S,
    pub gauge: S,
}

impl<S: Scalar> RSpec<S> {
    pub fn new(delta: S, a: S, b: S) -> Self {
        RSpec { delta, a, b, gauge: S::one() }
    }

    pub fn with_gauge(delta: S, a: S, b: S, gauge: S) -> Self {
        RSpec { delta, a, b, gauge }
    }

    /// `a = sqrt(delta/(delta^2-1))`, `b = -sqrt(1/(delta^3-delta))`,
    /// stored as `(1, -1/delta)` with gauge `delta/(delta^2-1)`.
    pub fn chromatic(delta: S) -> Result<Self, TlError> {
        let d2m1 = delta.clone() * delta.clone() - S::one();
        if d2m1.is_zero() || delta.is_zero() {
            return Err(TlError::DegenerateLoop);
        }
        let b = -delta.inv().map_err(|_| TlError::DegenerateLoop)?;
        let gauge = delta.checked_div(&d2m1).map_err(|_| TlError::DegenerateLoop)?;
        Ok(RSpec { delta, a: S::one(), b, gauge })
    }

    /// Swap the roles of `a` and `b`.
    pub fn swapped(&self) -> Self {
        RSpec { delta: self.delta.clone(), a: self.b.clone(), b: self.a.clone(), gauge: self.gauge.clone() }
    }

    /// Multiply `a` and `b` by the same phase.
    pub fn rotated(&self, z: &S) -> Self {
        RSpec {
            delta: self.delta.clone(),
            a: self.a.clone() * z.clone(),
            b: self.b.clone() * z.clone(),
            gauge: self.gauge.clone(),
        }
    }

    /// `gauge * (delta(|a|^2+|b|^2) + conj(a) b + a conj(b))`.
    pub fn normalization_formula(&self) -> S {
        let (a, b) = (&self.a, &self.b);
        let s = self.delta.clone() * (a.norm_sqr() + b.norm_sqr()) + a.conj() * b.clone() + a.clone() * b.conj();
        self.gauge.clone() * s
    }

    /// `|N - 1|` where `N` is [`normalization_value`].
    pub fn normalization_residual(&self) -> f64 {
        (normalization_value(self) - S::one()).modulus()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        normalization_value(self).approx_eq(&S::one(), tol)
    }

    /// Product `ab` of the physical parameters.
    pub fn ab(&self) -> S {
        self.gauge.clone() * self.a.clone() * self.b.clone()
    }
}

/// `V = a D1 + b D2` as a `(1, 3)` morphism, where `D1` keeps the strand on
/// the left and caps the two right points, `D2` the mirror image.
pub fn vertex_morphism<R: Ring>(a: &R, b: &R) -> TLMorphism<R> {
    let d1 = TLDiagram::from_pairs(1, 3, &[(0, 1), (2, 3)]).expect("planar");
    let d2 = TLDiagram::from_pairs(1, 3, &[(0, 3), (1, 2)]).expect("planar");
    let mut v = TLMorphism::from_diagram(d1, a.clone());
    v.add_term(d2, b.clone());
    v
}

/// Image of a tree under the functor, built caret by caret with the general
/// composition. For trees with `n` leaves this is a `(1, 2n-1)` morphism;
/// leaf `i` sits at strand `2i`.
///
/// The coefficients are those of the stored `(a, b)`; the physical image
/// carries the additional factor `gauge^((n-1)/2)`.
pub fn phi_tree<S: Scalar>(t: &BinaryTree, r: &RSpec<S>) -> TLMorphism<S> {
    phi_tree_ring(t, &r.delta, &r.a, &r.b)
}

pub fn phi_tree_ring<R: Ring>(t: &BinaryTree, delta: &R, a: &R, b: &R) -> TLMorphism<R> {
    let v = vertex_morphism(a, b);
    let mut acc = TLMorphism::identity(1);
    for c in t.carets() {
        let width = acc.top();
        let p = 2 * c.first;
        let layer = TLMorphism::identity(p).tensor(&v).tensor(&TLMorphism::identity(width - p - 1));
        acc = layer.compose(&acc, delta).expect("widths match");
    }
    acc
}

/// Image of a forest: tree images separated by single through strands.
pub fn phi_forest<S: Scalar>(f: &Forest, r: &RSpec<S>) -> TLMorphism<S> {
    let mut acc: Option<TLMorphism<S>> = None;
    for t in f.trees() {
        let img = phi_tree(t, r);
        acc = Some(match acc {
            None => img,
            Some(m) => m.tensor(&TLMorphism::identity(1)).tensor(&img),
        });
    }
    acc.expect("forests are nonempty")
}

/// The scalar `V^† ∘ V`, times the gauge.
pub fn normalization_value<S: Scalar>(r: &RSpec<S>) -> S {
    let v = vertex_morphism(&r.a, &r.b);
    let s = v.dagger().compose(&v, &r.delta).expect("(1,3) against (3,1)").scalar().expect("(1,1) morphism");
    r.gauge.clone() * s
}

/// `Phi(plus)^† ∘ Phi(minus)` for the stored parameters, without the gauge.
pub fn pairing<S: Scalar>(plus: &BinaryTree, minus: &BinaryTree, r: &RSpec<S>) -> S {
    line::tree_pairing(plus, minus, &r.delta, &r.a, &r.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forests::compose;
    use crate::scalars::{sqrt_exact, Quadratic};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_leaf_and_single_caret() {
        let r = RSpec::new(q(3, 2), q(1, 3), q(-2, 7));
        assert_eq!(phi_tree(&BinaryTree::leaf(), &r), TLMorphism::identity(1));
        assert_eq!(phi_tree(&BinaryTree::caret(), &r), vertex_morphism(&r.a, &r.b));
    }

    #[test]
    fn b_zero_gives_strand_and_cups() {
        // a = delta^(-1/2), delta = 2: a = sqrt(1/2)
        let delta = Quadratic::integer(2);
        let a = sqrt_exact(&q(1, 2)).unwrap();
        let r = RSpec::new(delta, a.clone(), Quadratic::integer(0));
        for t in BinaryTree::all_with_leaves(4) {
            let img = phi_tree(&t, &r);
            assert_eq!(img.len(), 1);
            let pairs = [(0, 1), (2, 3), (4, 5), (6, 7)];
            let d = TLDiagram::from_pairs(1, 7, &pairs).unwrap();
            // a^3 = 2^(-3/2)
            assert_eq!(img.coeff(&d), Ring::pow(&a, 3));
        }
    }

    #[test]
    fn normalization_anchors() {
        // a = 1/sqrt(delta), b = 0 at delta = 3
        let r = RSpec::new(Quadratic::integer(3), sqrt_exact(&q(1, 3)).unwrap(), Quadratic::integer(0));
        assert_eq!(normalization_value(&r), Quadratic::integer(1));
        // a = b = 1/sqrt(2(delta+1)) at delta = 2
        let ab = sqrt_exact(&q(1, 6)).unwrap();
        let r = RSpec::new(Quadratic::integer(2), ab.clone(), ab);
        assert_eq!(normalization_value(&r), Quadratic::integer(1));
        // chromatic point, in Q(sqrt 2), Q(sqrt 3) and Q
        for d in [sqrt_exact(&q(2, 1)).unwrap(), sqrt_exact(&q(3, 1)).unwrap(), Quadratic::integer(2)] {
            let r = RSpec::chromatic(d).unwrap();
            assert_eq!(normalization_value(&r), Quadratic::integer(1));
            assert_eq!(normalization_value(&r), r.normalization_formula());
        }
        assert!(RSpec::chromatic(Quadratic::integer(1)).is_err());
    }

    #[test]
    fn fast_pairing_agrees_with_general_composition() {
        let r = RSpec::new(q(5, 3), q(2, 7), q(-3, 4));
        for n in 1..=5 {
            let trees = BinaryTree::all_with_leaves(n);
            for p in &trees {
                for m in &trees {
                    let general =
                        phi_tree(p, &r).dagger().compose(&phi_tree(m, &r), &r.delta).unwrap().scalar().unwrap();
                    assert_eq!(pairing(p, m, &r), general);
                }
            }
        }
    }

    #[test]
    fn fast_expansion_agrees_with_general_composition() {
        let (delta, a, b) = (q(5, 3), q(2, 7), q(-3, 4));
        for t in BinaryTree::all_with_leaves(5) {
            let fast = line::expand_tree(&t, &a, &b);
            let general = phi_tree_ring(&t, &delta, &a, &b);
            assert_eq!(fast.len(), general.len());
            for (w, c) in fast {
                assert_eq!(general.coeff(&line::to_diagram(w, 10)), c);
            }
        }
    }

    proptest! {
        #[test]
        fn functor_respects_composition(lower in prop::collection::vec(any::<usize>(), 0..4),
                                        upper in prop::collection::vec(any::<usize>(), 0..6)) {
            let s = BinaryTree::from_splits(&lower);
            let n = s.n_leaves();
            // a forest on n roots reading its trees off a random tree
            let mut sizes = vec![1usize; n];
            for (k, u) in upper.iter().enumerate() {
                sizes[(u + k) % n] += 1;
            }
            let trees: Vec<BinaryTree> = sizes
                .iter()
                .zip(upper.iter().chain(std::iter::repeat(&0)))
                .map(|(&m, &seed)| BinaryTree::from_splits(&vec![seed; m - 1]))
                .collect();
            let f = Forest::new(trees).unwrap();
            let r = RSpec::new(q(7, 5), q(1, 2), q(-1, 3));
            let fs = compose(&f, &s.clone().into()).unwrap();
            let lhs = phi_tree(fs.as_tree().unwrap(), &r);
            let rhs = phi_forest(&f, &r).compose(&phi_tree(&s, &r), &r.delta).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
