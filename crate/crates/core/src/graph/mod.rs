//! Simple undirected graphs stored as per-vertex neighbor bitsets.
//!
//! A [`Graph`] is an immutable value: every edit returns a new graph. Vertices
//! are labeled `0..n`.

mod families;
pub mod graph6;

pub use families::{build_base_family_member, build_gnk, GnkLayout, GnkParams};

use std::fmt;

use crate::error::GraphError;

/// Largest order a [`Graph`] may have.
pub const MAX_ORDER: usize = 1024;

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::TooLarge { n, cap: MAX_ORDER });
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.set(u, v, true);
        }
        Ok(g)
    }

    /// The complete graph `K_n`. `n = 0` is rejected.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Degenerate(
                "complete graph needs at least one vertex",
            ));
        }
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, true);
            }
        }
        Ok(g)
    }

    /// The cycle `C_n` (`n >= 3`).
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Degenerate(
                "cycle needs at least three vertices",
            ));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The complete bipartite graph `K_{a,b}`; the `a` side comes first.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.set(u, v, true);
            }
        }
        Ok(g)
    }

    /// The Petersen graph.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen graph is valid")
    }

    /// `G1 ∨ G2`: disjoint union plus every edge between the two vertex sets.
    /// Vertices of `g2` are shifted by `g1.order()`.
    pub fn join(g1: &Graph, g2: &Graph) -> Result<Self, GraphError> {
        let mut g = Graph::disjoint_union(g1, g2)?;
        let n1 = g1.n;
        for u in 0..n1 {
            for v in n1..g.n {
                g.set(u, v, true);
            }
        }
        Ok(g)
    }

    /// `G1 ∪ G2` with the vertices of `g2` shifted by `g1.order()`.
    pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Self, GraphError> {
        let n1 = g1.n;
        let mut g = Graph::empty(n1 + g2.n)?;
        for (u, v) in g1.edges() {
            g.set(u, v, true);
        }
        for (u, v) in g2.edges() {
            g.set(u + n1, v + n1, true);
        }
        Ok(g)
    }

    /// The complement graph.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same order");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g
    }

    /// Returns a copy with the non-edge `uv` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        let mut g = self.clone();
        g.set(u, v, true);
        Ok(g)
    }

    /// Returns a copy with the edge `uv` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.set(u, v, false);
        Ok(g)
    }

    /// Applies a vertex relabeling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation);
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::BadPermutation);
            }
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Induced subgraph on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("no larger than self");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `δ(G)`; zero for the null graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Δ(G)`; zero for the null graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Neighbor bitset of `v` as raw words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Neighbor lists, one sorted `Vec` per vertex.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                v: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (wu, bu) = (u * self.words + v / WORD, v % WORD);
        let (wv, bv) = (v * self.words + u / WORD, u % WORD);
        if on {
            self.rows[wu] |= 1 << bu;
            self.rows[wv] |= 1 << bv;
        } else {
            self.rows[wu] &= !(1 << bu);
            self.rows[wv] &= !(1 << bv);
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, {})",
            self.n,
            self.edge_count(),
            graph6::encode(self)
        )
    }
}

/// Iterates the set bit positions of a word, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// `n choose 2`.
#[inline]
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
