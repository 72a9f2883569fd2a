use std::fmt::{self, Write as _};

use super::GraphError;
use crate::forests::ThompsonElement;

/// Undirected multigraph on vertices `0..n`, loops allowed. Edges are kept
/// as a sorted multiset of pairs `(u, v)` with `u <= v`, which is also the
/// canonical form used for hashing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = Multigraph { n, edges: Vec::new() };
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            out.edges.push((u.min(v), u.max(v)));
        }
        out.edges.sort_unstable();
        Ok(out)
    }

    pub fn empty(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("in range")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        let e = (u.min(v), u.max(v));
        let at = self.edges.partition_point(|x| *x <= e);
        self.edges.insert(at, e);
        Ok(())
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let e = (u.min(v), u.max(v));
        self.edges.iter().filter(|x| **x == e).count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Number of connected components of `(V, S)` where `S` is the set of
    /// edges whose indices have their bit set in `mask`.
    pub fn components_of(&self, mask: u64) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    comps -= 1;
                }
            }
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut comps = self.n;
        for &(u, v) in &self.edges {
            let (mut a, mut b) = (u, v);
            while parent[a] != a {
                a = parent[a];
            }
            while parent[b] != b {
                b = parent[b];
            }
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.n
    }

    /// Two-colourability; a loop makes a graph non-bipartite.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        adj
    }

    /// Drop repeated edges, keeping loops (once each vertex).
    pub fn simplify(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.dedup();
        Multigraph { n: self.n, edges }
    }

    pub fn delete_edge(&self, index: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Multigraph { n: self.n, edges }
    }

    /// Contract edge `index`: its endpoints merge, the other parallel
    /// copies become loops.
    pub fn contract_edge(&self, index: usize) -> Self {
        let (u, v) = self.edges[index];
        self.delete_edge(index).identify(&[u, v])
    }

    /// Identify the given vertices into one (placed at the smallest of
    /// them), relabelling the rest in order. Edges among them become loops.
    pub fn identify(&self, vertices: &[usize]) -> Self {
        if vertices.len() < 2 {
            return self.clone();
        }
        let target = *vertices.iter().min().expect("nonempty");
        let mut label = vec![0; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if vertices.contains(&v) && v != target {
                continue;
            }
            label[v] = next;
            next += 1;
        }
        for &v in vertices {
            label[v] = label[target];
        }
        Self::new(next, self.edges.iter().map(|&(a, b)| (label[a], label[b]))).expect("relabelled")
    }

    /// Add a vertex `n` joined once to each vertex of `attach`.
    pub fn cone(&self, attach: &[usize]) -> Result<Self, GraphError> {
        let mut g = Multigraph { n: self.n + 1, edges: self.edges.clone() };
        for &v in attach {
            g.add_edge(v, self.n)?;
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::new(self.n + other.n, edges).expect("in range")
    }

    /// Graphviz text, one line per edge copy, vertices labelled from 1.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(s, "  {};", v + 1);
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  {} -- {};", u + 1, v + 1);
        }
        s.push_str("}\n");
        s
    }

    /// Edges with 1-based labels.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices:", self.n)?;
        for (u, v) in self.edge_list() {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

/// `Gamma(g)`: one vertex per leaf, one edge per caret of either tree,
/// joining the leftmost leaves of the caret's two subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThompsonGraph {
    pub element: ThompsonElement,
    pub graph: Multigraph,
    /// Edges contributed by the range tree and the domain tree.
    pub plus_edges: Vec<(usize, usize)>,
    pub minus_edges: Vec<(usize, usize)>,
}

pub fn thompson_graph(g: &ThompsonElement) -> ThompsonGraph {
    let tree_edges = |t: &crate::forests::BinaryTree| t.carets().iter().map(|c| (c.first, c.split)).collect::<Vec<_>>();
    let plus_edges = tree_edges(g.plus());
    let minus_edges = tree_edges(g.minus());
    let graph = Multigraph::new(g.n_leaves(), plus_edges.iter().chain(&minus_edges).copied()).expect("leaf indices");
    ThompsonGraph { element: g.clone(), graph, plus_edges, minus_edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forests::enumerate_elements;

    #[test]
    fn x0_graph_is_doubled_triangle() {
        let tg = thompson_graph(&ThompsonElement::x0());
        assert_eq!(tg.graph.vertex_count(), 3);
        assert_eq!(tg.graph.edge_list(), vec![(1, 2), (1, 2), (1, 3), (2, 3)]);
        assert!(!tg.graph.is_bipartite());
    }

    #[test]
    fn identity_graph() {
        let tg = thompson_graph(&ThompsonElement::identity());
        assert_eq!(tg.graph, Multigraph::empty(1));
    }

    #[test]
    fn graph_contracting_to_k4() {
        let g: ThompsonElement = "pair:111001000,101100100".parse().unwrap();
        let tg = thompson_graph(&g);
        let one = |v: &[(usize, usize)]| {
            let mut v: Vec<_> = v.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
            v.sort();
            v
        };
        assert_eq!(one(&tg.plus_edges), vec![(1, 2), (1, 3), (1, 5), (3, 4)]);
        assert_eq!(one(&tg.minus_edges), vec![(1, 2), (2, 3), (2, 4), (4, 5)]);
        // contracting the bottom edge 4-5 leaves K4 after simplification
        let e = tg.graph.edges().iter().position(|&x| x == (3, 4)).unwrap();
        assert_eq!(tg.graph.contract_edge(e).simplify(), Multigraph::complete(4));
    }

    #[test]
    fn shape_of_thompson_graphs() {
        for g in enumerate_elements(6) {
            let tg = thompson_graph(&g);
            let n = g.n_leaves();
            assert_eq!(tg.graph.vertex_count(), n);
            assert_eq!(tg.graph.edge_count(), 2 * (n - 1));
            assert!(tg.graph.is_connected());
            assert_eq!(tg.graph.loop_count(), 0);
        }
    }

    #[test]
    fn identify_and_cone() {
        let g = Multigraph::path(4);
        let q = g.identify(&[0, 2]);
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.edge_list(), vec![(1, 2), (1, 2), (1, 3)]);
        let c = g.cone(&[0, 3]).unwrap();
        assert_eq!(c.edge_count(), 5);
        assert_eq!(c.degree(4), 2);
        assert!(g.cone(&[7]).is_err());
        assert!(g.to_dot("G").contains("3 -- 4;"));
    }
}
