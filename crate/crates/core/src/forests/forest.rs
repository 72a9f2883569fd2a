use std::fmt;

use super::{BinaryTree, ForestError};

/// Ordered sequence of trees; roots on the bottom, leaves on top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<BinaryTree>,
}

impl Forest {
    pub fn new(trees: Vec<BinaryTree>) -> Result<Self, ForestError> {
        if trees.is_empty() {
            return Err(ForestError::EmptyForest);
        }
        Ok(Forest { trees })
    }

    /// `| • | • ... • |` with `n` roots.
    pub fn identity(n: usize) -> Self {
        Forest { trees: vec![BinaryTree::leaf(); n.max(1)] }
    }

    pub fn trees(&self) -> &[BinaryTree] {
        &self.trees
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(BinaryTree::n_leaves).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.trees.iter().all(BinaryTree::is_leaf)
    }

    /// Horizontal concatenation `self • other`.
    pub fn tensor(&self, other: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Forest { trees }
    }

    /// The single tree of a one-root forest.
    pub fn as_tree(&self) -> Option<&BinaryTree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }
}

impl From<BinaryTree> for Forest {
    fn from(t: BinaryTree) -> Self {
        Forest { trees: vec![t] }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.trees.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Graft `upper` on top of `tree`: leaf `i` of `tree` becomes the root of
/// the `i`-th tree of `upper`.
fn graft(tree: &BinaryTree, upper: &mut std::slice::Iter<'_, BinaryTree>) -> Vec<bool> {
    let mut out = Vec::new();
    for &b in tree.preorder() {
        if b {
            out.push(true);
        } else {
            out.extend_from_slice(upper.next().expect("leaf count checked").preorder());
        }
    }
    out
}

/// `upper ∘ lower`: stack `upper` on the leaves of `lower`.
pub fn compose(upper: &Forest, lower: &Forest) -> Result<Forest, ForestError> {
    if upper.roots() != lower.leaves() {
        return Err(ForestError::CountMismatch { roots: upper.roots(), leaves: lower.leaves() });
    }
    let mut it = upper.trees.iter();
    let trees = lower
        .trees
        .iter()
        .map(|t| BinaryTree::from_preorder(graft(t, &mut it)).expect("grafting keeps trees well formed"))
        .collect();
    Ok(Forest { trees })
}

/// The forest `f` with `f ∘ lower = upper`, if `lower` is a rooted subtree of `upper`.
pub fn quotient(upper: &BinaryTree, lower: &BinaryTree) -> Option<Forest> {
    let mut trees = Vec::with_capacity(lower.n_leaves());
    let u = upper.preorder();
    let mut i = 0;
    for &b in lower.preorder() {
        if b {
            if !u[i] {
                return None;
            }
            i += 1;
        } else {
            let mut need = 1usize;
            let start = i;
            while need > 0 {
                if u[i] {
                    need += 1;
                } else {
                    need -= 1;
                }
                i += 1;
            }
            trees.push(BinaryTree::from_preorder(u[start..i].to_vec()).ok()?);
        }
    }
    Some(Forest { trees })
}

/// Forests `(p, q)` with `p ∘ s = q ∘ t` equal to the least common expansion
/// of `s` and `t`.
pub fn common_multiple(s: &BinaryTree, t: &BinaryTree) -> (Forest, Forest) {
    let j = s.join(t);
    let p = quotient(&j, s).expect("join contains s");
    let q = quotient(&j, t).expect("join contains t");
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> BinaryTree {
        s.parse().unwrap()
    }

    #[test]
    fn grafting_examples() {
        let y: Forest = BinaryTree::caret().into();
        assert_eq!(compose(&y, &Forest::identity(1)).unwrap(), y);
        let y_bar = Forest::new(vec![BinaryTree::caret(), BinaryTree::leaf()]).unwrap();
        let bar_y = Forest::new(vec![BinaryTree::leaf(), BinaryTree::caret()]).unwrap();
        let a = compose(&y_bar, &y).unwrap();
        let b = compose(&bar_y, &y).unwrap();
        let addr = |f: &Forest| -> Vec<String> {
            f.as_tree().unwrap().leaf_addresses().iter().map(ToString::to_string).collect()
        };
        assert_eq!(addr(&a), ["00", "01", "1"]);
        assert_eq!(addr(&b), ["0", "10", "11"]);
        assert!(compose(&y, &y).is_err());
    }

    #[test]
    fn common_multiples() {
        let s = tree("11000");
        let (p, q) = common_multiple(&s, &s);
        assert!(p.is_identity() && q.is_identity());

        let (p, q) = common_multiple(&BinaryTree::caret(), &BinaryTree::leaf());
        assert!(p.is_identity());
        assert_eq!(q.as_tree(), Some(&BinaryTree::caret()));

        let t = tree("10100");
        let (p, q) = common_multiple(&s, &t);
        let ps = compose(&p, &s.clone().into()).unwrap();
        let qt = compose(&q, &t.clone().into()).unwrap();
        assert_eq!(ps, qt);
        let joined = ps.as_tree().unwrap();
        assert_eq!(joined.n_leaves(), 4);
        let mut carets = s.caret_addresses();
        carets.extend(t.caret_addresses());
        carets.sort();
        carets.dedup();
        let mut got = joined.caret_addresses();
        got.sort();
        assert_eq!(got, carets);
    }

    #[test]
    fn quotient_requires_containment() {
        assert!(quotient(&BinaryTree::caret(), &tree("11000")).is_none());
        let f = quotient(&tree("11000"), &BinaryTree::caret()).unwrap();
        assert_eq!(f.to_string(), "100.0");
    }
}
