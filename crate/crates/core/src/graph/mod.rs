//! Simple undirected graphs, circular vertex orders, and the structural
//! decompositions used by the constructions.

mod blocks;
mod canon;
mod caterpillar;
mod graph6;
mod named;
mod outerpath;
mod two_tree;

pub use blocks::{block_cut_tree, Block, BlockDecomposition, BlockKind};
pub use canon::{canonical_form, canonical_labeling, is_isomorphic};
pub use caterpillar::{caterpillar_spine, is_tree};
pub use graph6::{parse_graph6, write_graph6};
pub use named::{named_graph, parse_named, NamedGraph};
pub use outerpath::{validate_outerpath, OuterpathStructure};
pub use two_tree::{is_two_tree, two_tree_plan, StackEvent, StackingPlan};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameters for {family}: {message}")]
    BadParameters { family: String, message: String },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("not a partial 2-tree (treewidth > 2); stuck on {remaining} vertices of degree >= 3")]
    NotPartialTwoTree { remaining: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is not a caterpillar")]
    NotACaterpillar,
    #[error("graph is not a cactus: {0}")]
    NotACactus(String),
    #[error("invalid circular order: {0}")]
    BadOrder(String),
    #[error("invalid outerpath: {0}")]
    BadOuterpath(String),
}

/// Undirected simple graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], matrix: vec![false; n * n], labels: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.insert(u, v);
        Ok(())
    }

    fn insert(&mut self, u: usize, v: usize) {
        if self.matrix[u * self.n + v] {
            return;
        }
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.matrix[u * self.n + v] {
            return false;
        }
        self.matrix[u * self.n + v] = false;
        self.matrix[v * self.n + u] = false;
        self.adj[u].retain(|&w| w != v);
        self.adj[v].retain(|&w| w != u);
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Unordered vertex pairs that are not edges, `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.insert(i, j);
                }
            }
            if let Some(l) = self.labels.get(&v) {
                g.labels.insert(i, l.clone());
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A cyclic arrangement of all vertices, read clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircularOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl CircularOrder {
    pub fn new(seq: Vec<usize>) -> Result<Self, GraphError> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n {
                return Err(GraphError::BadOrder(format!("vertex {v} out of range 0..{n}")));
            }
            if pos[v] != usize::MAX {
                return Err(GraphError::BadOrder(format!("vertex {v} repeated")));
            }
            pos[v] = i;
        }
        Ok(CircularOrder { seq, pos })
    }

    pub fn identity(n: usize) -> Self {
        CircularOrder { seq: (0..n).collect(), pos: (0..n).collect() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.seq[i % self.seq.len()]
    }

    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn succ(&self, v: usize) -> usize {
        self.at(self.pos[v] + 1)
    }

    pub fn pred(&self, v: usize) -> usize {
        self.at(self.pos[v] + self.len() - 1)
    }

    /// Clockwise steps from `u` to `v`.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        (self.pos[v] + self.len() - self.pos[u]) % self.len()
    }

    /// Circular length of the chord `uv`: the shorter way around.
    pub fn circular_length(&self, u: usize, v: usize) -> usize {
        let d = self.distance(u, v);
        d.min(self.len() - d)
    }

    /// `[u, v]`: vertices from `u` clockwise to `v`, both included.
    pub fn closed(&self, u: usize, v: usize) -> Vec<usize> {
        let d = self.distance(u, v);
        (0..=d).map(|k| self.at(self.pos[u] + k)).collect()
    }

    /// `[u, v)`.
    pub fn half_open(&self, u: usize, v: usize) -> Vec<usize> {
        let d = self.distance(u, v);
        (0..d).map(|k| self.at(self.pos[u] + k)).collect()
    }

    /// `(u, v)`.
    pub fn open(&self, u: usize, v: usize) -> Vec<usize> {
        let d = self.distance(u, v);
        (1..d).map(|k| self.at(self.pos[u] + k)).collect()
    }

    /// Same cyclic order rotated so that vertex `v` comes first.
    pub fn rotated_to(&self, v: usize) -> CircularOrder {
        let p = self.pos[v];
        let seq: Vec<usize> = (0..self.len()).map(|k| self.at(p + k)).collect();
        CircularOrder::new(seq).expect("rotation of a permutation")
    }

    pub fn reversed(&self) -> CircularOrder {
        let mut seq = self.seq.clone();
        seq.reverse();
        CircularOrder::new(seq).expect("reversal of a permutation")
    }

    /// Representative with vertex 0 first and `seq[1] < seq[n-1]`.
    pub fn canonical(&self) -> CircularOrder {
        if self.len() < 3 {
            return self.rotated_to(0);
        }
        let r = self.rotated_to(0);
        if r.seq[1] < r.seq[self.len() - 1] {
            r
        } else {
            r.reversed().rotated_to(0)
        }
    }
}

impl fmt::Display for CircularOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_an_involution() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(Graph::complete(6).complement().edge_count(), 0);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        let mut g = Graph::empty(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange(3)));
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn interval_notation() {
        let s = CircularOrder::new(vec![3, 1, 4, 0, 2]).unwrap();
        assert_eq!(s.closed(4, 3), vec![4, 0, 2, 3]);
        assert_eq!(s.half_open(4, 3), vec![4, 0, 2]);
        assert_eq!(s.open(4, 3), vec![0, 2]);
        assert_eq!(s.succ(2), 3);
        assert_eq!(s.pred(3), 2);
        assert_eq!(s.circular_length(3, 2), 1);
        assert_eq!(s.circular_length(1, 2), 2);
    }

    #[test]
    fn canonical_form_fixes_zero_and_breaks_reflection() {
        let s = CircularOrder::new(vec![2, 0, 4, 1, 3]).unwrap();
        let c = s.canonical();
        assert_eq!(c.as_slice()[0], 0);
        assert!(c.as_slice()[1] < c.as_slice()[4]);
        assert_eq!(c, s.reversed().canonical());
        assert!(CircularOrder::new(vec![0, 0, 1]).is_err());
    }
}
