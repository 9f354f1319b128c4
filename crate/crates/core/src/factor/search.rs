//! Exhaustive search for the `(S, T)` pair of largest deficiency.
//!
//! The search is exact over all `3ⁿ` assignments but prunes with the bound
//!
//! `δ(S,T) ≤ k|T| − 2e(T) − k|S| + τ₀(S,T)`,
//!
//! where `τ₀` counts the odd-counted components of `G − (S ∪ T)` that send no
//! edge to `T` (every other counted component sends at least one edge to `T`,
//! and those edges are already subtracted inside `Σ d_{G−S}`). Picking one
//! vertex from each such component and adding it to `T` shows
//! `k|T| − 2e(T) + τ₀ ≤ W(V∖S)`, with `W(X) = max_{Y⊆X} k|Y| − 2e(Y)`.
//!
//! When the smallest witness is requested, two exchange moves shrink `S ∪ T`
//! without lowering the deficiency, so the optimum satisfies
//!
//! * every `v ∈ S` has `d_{G−S}(v) ≥ k + 1` (else moving `v` out of `S` is
//!   no worse), and
//! * every `v ∈ T` has fewer than `k` neighbors in `T` (else moving `v` out of
//!   `T` is no worse),
//!
//! and the search only visits pairs with both properties. Two further moves
//! strictly increase the deficiency, so every optimum (under either
//! tie-break) also has
//!
//! * every `v ∉ S ∪ T` with `d_{G−S}(v) ≥ k − 1` (else moving `v` into `T`
//!   gains at least one), and
//! * every `v ∉ S ∪ T` with at most `k + 1` neighbors in `T` (else moving `v`
//!   into `S` gains at least one).
//!
//! All deficiencies share the parity of `kn`, so bounds are rounded down to
//! that parity before comparing.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::deficiency::{evaluate, DeficiencyWitness};
use crate::error::FactorError;
use crate::graph::{BitIter, Graph};

/// Default largest order for exhaustive searches.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 14;

/// Hard limit imposed by the 64-bit vertex masks.
pub const MASK_LIMIT: usize = 63;

/// Which witness to report among those of maximal deficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TieBreak {
    /// Smallest `|S ∪ T|`, then lexicographically smallest `S`, then `T`.
    #[default]
    Smallest,
    /// Largest `|S ∪ T|`, then lexicographically smallest `S`, then `T`.
    Largest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub cap: usize,
    pub tie_break: TieBreak,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_EXHAUSTIVE_CAP,
            tie_break: TieBreak::Smallest,
        }
    }
}

/// Counters collected while searching.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Exact deficiency evaluations performed.
    pub evaluations: u64,
    /// Evaluations whose value had the wrong parity (always zero).
    pub parity_failures: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: SearchStats) {
        self.evaluations += other.evaluations;
        self.parity_failures += other.parity_failures;
    }
}

/// Finds a pair with positive deficiency, maximizing it, or `None` when every
/// pair has `δ ≤ 0` (equivalently, `g` has a k-factor).
pub fn search_certificate(g: &Graph, k: usize) -> Result<Option<DeficiencyWitness>, FactorError> {
    search_certificate_with(g, k, &SearchOptions::default()).map(|(w, _)| w)
}

pub fn search_certificate_with(
    g: &Graph,
    k: usize,
    opts: &SearchOptions,
) -> Result<(Option<DeficiencyWitness>, SearchStats), FactorError> {
    if k == 0 {
        return Err(FactorError::DegreeTooSmall { k, min: 1 });
    }
    let n = g.order();
    let cap = opts.cap.min(MASK_LIMIT);
    if n > cap {
        return Err(FactorError::CapExceeded { n, cap });
    }
    let adj = masks(g);
    let mut search = Search::new(&adj, k, opts.tie_break);
    search.run();
    let stats = search.stats;
    let witness = match search.best {
        None => None,
        Some(c) => {
            let w = evaluate(g, &bits(c.s), &bits(c.t), k)?;
            debug_assert_eq!(w.delta, c.delta);
            Some(w)
        }
    };
    Ok((witness, stats))
}

pub(crate) fn masks(g: &Graph) -> Vec<u64> {
    (0..g.order()).map(|v| g.row(v)[0]).collect()
}

pub(crate) fn bits(mask: u64) -> Vec<usize> {
    BitIter(mask).collect()
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    delta: i64,
    s: u64,
    t: u64,
}

/// Lexicographic comparison of the sorted index lists of two masks.
fn lex_cmp(a: u64, b: u64) -> Ordering {
    let mut ia = BitIter(a);
    let mut ib = BitIter(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

/// `Less` means `a` is preferred over `b`.
fn preference(a: &Candidate, b: &Candidate, tie: TieBreak) -> Ordering {
    let size = |c: &Candidate| (c.s | c.t).count_ones();
    b.delta
        .cmp(&a.delta)
        .then_with(|| match tie {
            TieBreak::Smallest => size(a).cmp(&size(b)),
            TieBreak::Largest => size(b).cmp(&size(a)),
        })
        .then_with(|| lex_cmp(a.s, b.s))
        .then_with(|| lex_cmp(a.t, b.t))
}

/// `max_{Y ⊆ allowed} k|Y| − 2e(Y)`.
fn sparse_weight(adj: &[u64], allowed: u64, k: i64) -> i64 {
    fn go(
        adj: &[u64],
        order: &[usize],
        idx: usize,
        chosen: u64,
        value: i64,
        k: i64,
        best: &mut i64,
    ) {
        *best = (*best).max(value);
        let optimistic: i64 = order[idx..]
            .iter()
            .map(|&v| (k - 2 * (adj[v] & chosen).count_ones() as i64).max(0))
            .sum();
        if value + optimistic <= *best {
            return;
        }
        for (j, &v) in order.iter().enumerate().skip(idx) {
            let gain = k - 2 * (adj[v] & chosen).count_ones() as i64;
            if gain > 0 {
                go(adj, order, j + 1, chosen | 1 << v, value + gain, k, best);
            }
        }
    }
    let mut order = bits(allowed);
    order.sort_by_key(|&v| (adj[v] & allowed).count_ones());
    let mut best = 0;
    go(adj, &order, 0, 0, 0, k, &mut best);
    best
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    all: u64,
    k: i64,
    tie: TieBreak,
    best: Option<Candidate>,
    stats: SearchStats,
    weight_all: i64,
}

/// Per-`S` state for the inner search over `T`.
struct Inner {
    s: u64,
    s_len: i64,
    rest: u64,
    /// `d_{G−S}(v)` for `v ∉ S`.
    deg_out: Vec<i64>,
    /// Components of `G − S` whose `k|C|` is odd.
    odd_components: Vec<u64>,
    /// Vertices not forced into `T`, ascending.
    candidates: Vec<usize>,
    /// `skipped_before[i]`: mask of `candidates[..i]`.
    skipped_before: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64], k: usize, tie: TieBreak) -> Self {
        let n = adj.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let k = k as i64;
        Search {
            adj,
            n,
            all,
            k,
            tie,
            best: None,
            stats: SearchStats::default(),
            weight_all: sparse_weight(adj, all, k),
        }
    }

    fn threshold(&self) -> i64 {
        self.best.map_or(1, |b| b.delta.max(1))
    }

    /// Whether a subtree whose pairs have `δ ≤ bound` and `|S ∪ T| ≥ min_size`
    /// can still improve on the incumbent.
    fn worth_exploring(&self, bound: i64, min_size: u32) -> bool {
        let bound = bound - (bound - self.k * self.n as i64).rem_euclid(2);
        let threshold = self.threshold();
        if bound < threshold {
            return false;
        }
        match (self.best, self.tie) {
            (Some(b), TieBreak::Smallest) if bound <= b.delta => {
                min_size <= (b.s | b.t).count_ones()
            }
            _ => true,
        }
    }

    fn offer(&mut self, c: Candidate) {
        if c.delta < 1 {
            return;
        }
        let better = match &self.best {
            None => true,
            Some(b) => preference(&c, b, self.tie) == Ordering::Less,
        };
        if better {
            self.best = Some(c);
        }
    }

    fn run(&mut self) {
        self.visit_s(0, 0, 0);
    }

    fn s_feasible(&self, s: u64) -> bool {
        let need = self.k as u32 + 1;
        BitIter(s).all(|v| (self.adj[v] & !s & self.all).count_ones() >= need)
    }

    fn visit_s(&mut self, i: usize, s: u64, s_len: i64) {
        if !self.worth_exploring(self.weight_all - self.k * s_len, s_len as u32) {
            return;
        }
        if i == self.n {
            self.process_s(s, s_len);
            return;
        }
        self.visit_s(i + 1, s, s_len);
        let with = s | 1 << i;
        if self.tie == TieBreak::Largest || self.s_feasible(with) {
            self.visit_s(i + 1, with, s_len + 1);
        }
    }

    fn process_s(&mut self, s: u64, s_len: i64) {
        let rest = self.all & !s;
        if !self.worth_exploring(
            sparse_weight(self.adj, rest, self.k) - self.k * s_len,
            s_len as u32,
        ) {
            return;
        }
        let mut deg_out = vec![0i64; self.n];
        for v in BitIter(rest) {
            deg_out[v] = (self.adj[v] & rest).count_ones() as i64;
        }
        // vertices of small outside degree belong to T in some optimum
        let forced_max = match self.tie {
            TieBreak::Smallest => self.k - 2,
            TieBreak::Largest => self.k - 1,
        };
        let forced = BitIter(rest)
            .filter(|&v| deg_out[v] <= forced_max)
            .fold(0u64, |m, v| m | 1 << v);
        if self.tie == TieBreak::Smallest
            && BitIter(forced).any(|v| (self.adj[v] & forced).count_ones() as i64 >= self.k)
        {
            return;
        }
        let odd_components = components(self.adj, rest)
            .into_iter()
            .filter(|c| self.k * c.count_ones() as i64 % 2 == 1)
            .collect();
        let candidates = bits(rest & !forced);
        let mut skipped_before = Vec::with_capacity(candidates.len() + 1);
        let mut acc = 0u64;
        for &v in &candidates {
            skipped_before.push(acc);
            acc |= 1 << v;
        }
        skipped_before.push(acc);
        let inner = Inner {
            s,
            s_len,
            rest,
            deg_out,
            odd_components,
            candidates,
            skipped_before,
        };
        let t_len = forced.count_ones() as i64;
        let e_t = BitIter(forced)
            .map(|v| (self.adj[v] & forced).count_ones() as i64)
            .sum::<i64>()
            / 2;
        let deg_sum = BitIter(forced).map(|v| inner.deg_out[v]).sum();
        self.visit_t(&inner, 0, forced, t_len, e_t, deg_sum);
    }

    /// `tau` for `G − (S ∪ T)`.
    fn tau(&self, inner: &Inner, t: u64) -> i64 {
        let mut remaining = inner.rest & !t;
        let mut tau = 0;
        while remaining != 0 {
            let start = remaining & remaining.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & remaining & !comp;
                comp |= frontier;
            }
            remaining &= !comp;
            let to_t: i64 = BitIter(comp)
                .map(|v| (self.adj[v] & t).count_ones() as i64)
                .sum();
            if (to_t + self.k * comp.count_ones() as i64) % 2 == 1 {
                tau += 1;
            }
        }
        tau
    }

    fn t_allowed(&self, v: usize, t: u64, saturated: u64) -> bool {
        self.tie == TieBreak::Largest
            || ((self.adj[v] & t).count_ones() as i64) < self.k && self.adj[v] & saturated == 0
    }

    fn visit_t(&mut self, inner: &Inner, idx: usize, t: u64, t_len: i64, e_t: i64, deg_sum: i64) {
        let k = self.k;
        // a vertex left out of T for good may not see too much of T
        let out_limit = match self.tie {
            TieBreak::Smallest => k + 1,
            TieBreak::Largest => k,
        };
        if BitIter(inner.skipped_before[idx] & !t)
            .any(|v| (self.adj[v] & t).count_ones() as i64 > out_limit)
        {
            return;
        }
        let delta = self.tau(inner, t) + k * t_len - k * inner.s_len - deg_sum;
        self.stats.evaluations += 1;
        if (delta - k * self.n as i64).rem_euclid(2) != 0 {
            self.stats.parity_failures += 1;
        }
        self.offer(Candidate {
            delta,
            s: inner.s,
            t,
        });

        let saturated = if self.tie == TieBreak::Smallest {
            BitIter(t)
                .filter(|&u| (self.adj[u] & t).count_ones() as i64 >= k - 1)
                .fold(0u64, |m, u| m | 1 << u)
        } else {
            0
        };
        let mut reach = t;
        for u in BitIter(t) {
            reach |= self.adj[u];
        }
        let isolated_odd = inner
            .odd_components
            .iter()
            .filter(|&&c| c & reach == 0)
            .count() as i64;
        // A vertex ending outside T with e edges to T costs at least e − 1
        // (its component meets T in e edges but is counted at most once).
        let left_out: i64 = BitIter(inner.skipped_before[idx] & !t)
            .map(|v| ((self.adj[v] & t).count_ones() as i64 - 1).max(0))
            .sum();
        let undecided: i64 = inner.candidates[idx..]
            .iter()
            .map(|&v| {
                let e = (self.adj[v] & t).count_ones() as i64;
                let stay = -(e - 1).max(0);
                if self.t_allowed(v, t, saturated) {
                    stay.max(k - 2 * e)
                } else {
                    stay
                }
            })
            .sum();
        let bound = k * t_len - 2 * e_t - k * inner.s_len + isolated_odd - left_out + undecided;
        let size_next = (inner.s | t).count_ones() + 1;
        if !self.worth_exploring(bound, size_next) {
            return;
        }
        for j in idx..inner.candidates.len() {
            let v = inner.candidates[j];
            if !self.t_allowed(v, t, saturated) {
                continue;
            }
            let new_edges = (self.adj[v] & t).count_ones() as i64;
            self.visit_t(
                inner,
                j + 1,
                t | 1 << v,
                t_len + 1,
                e_t + new_edges,
                deg_sum + inner.deg_out[v],
            );
        }
    }
}

/// Connected components of the subgraph induced by `within`, as masks.
pub(crate) fn components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut remaining = within;
    let mut out = Vec::new();
    while remaining != 0 {
        let start = remaining & remaining.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= adj[v];
            }
            frontier = next & remaining & !comp;
            comp |= frontier;
        }
        remaining &= !comp;
        out.push(comp);
    }
    out
}
