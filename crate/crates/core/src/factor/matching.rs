//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm, BFS variant with explicit blossom contraction via base labels).

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Mate array of a maximum matching: `mate[v]` is `v`'s partner, if any.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    Blossom::new(adj).solve()
}

/// As [`maximum_matching`], extending the matching `initial` (which must be
/// a valid matching of `adj`) instead of a greedy one.
pub fn maximum_matching_from(adj: &[Vec<usize>], initial: &[Option<usize>]) -> Vec<Option<usize>> {
    let mut b = Blossom::new(adj);
    for (v, m) in initial.iter().enumerate() {
        if let Some(u) = *m {
            debug_assert_eq!(initial[u], Some(v));
            debug_assert!(adj[v].contains(&u));
            b.mate[v] = u;
        }
    }
    b.solve()
}

/// Maximum matching of `g` as a sorted edge list `(u, v)` with `u < v`.
pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    mate_to_edges(&maximum_matching(&g.adjacency_lists()))
}

pub(crate) fn mate_to_edges(mate: &[Option<usize>]) -> Vec<(usize, usize)> {
    mate.iter()
        .enumerate()
        .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
        .collect()
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<u32>,
    lca_stamp: u32,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![0; n],
            lca_stamp: 0,
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn solve(mut self) -> Vec<Option<usize>> {
        let n = self.adj.len();
        // greedy start, low-degree vertices first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.adj[v].len());
        for &v in &order {
            if self.mate[v] == NONE {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        // a vertex with no augmenting path now never gains one later
        for root in 0..n {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
                self.reset();
            }
        }
        self.mate
            .into_iter()
            .map(|m| (m != NONE).then_some(m))
            .collect()
    }

    fn touch(&mut self, v: usize) {
        if !self.in_tree[v] && self.parent[v] == NONE {
            self.touched.push(v);
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.parent[v] = NONE;
            self.base[v] = v;
            self.in_tree[v] = false;
        }
        self.touched.clear();
        self.queue.clear();
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.lca_stamp += 1;
        let stamp = self.lca_stamp;
        loop {
            a = self.base[a];
            self.lca_mark[a] = stamp;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] == stamp {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.touch(v);
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.touch(root);
        self.in_tree[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for j in 0..self.touched.len() {
                        let u = self.touched[j];
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.in_tree[u] {
                                self.in_tree[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                    for j in 0..self.touched.len() {
                        let u = self.touched[j];
                        self.in_blossom[u] = false;
                    }
                } else if self.parent[to] == NONE {
                    self.touch(to);
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.touch(next);
                    self.in_tree[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}
