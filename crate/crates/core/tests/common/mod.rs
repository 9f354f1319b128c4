//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::path::PathBuf;

use itertools::Itertools;
use kfs_core::graph::graph6;
use kfs_core::spectral::{rho, SpectralEstimate};
use kfs_core::Graph;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` drawn from `rng`.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// A connected `G(n, p)`, redrawn until connected.
pub fn connected_gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = gnp(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// `(graph6, ρ)` pairs from the high-precision oracle file.
pub fn spectral_oracle() -> Vec<(String, f64)> {
    std::fs::read_to_string(fixture("spectral_oracle.txt"))
        .unwrap()
        .lines()
        .map(|line| {
            let (g6, value) = line.split_once(' ').unwrap();
            (g6.to_string(), value.parse().unwrap())
        })
        .collect()
}

/// One line of the `G_{n,k}` reference table.
pub struct GnkRow {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub rho: f64,
    pub degrees: Vec<usize>,
}

pub fn gnk_reference() -> Vec<GnkRow> {
    std::fs::read_to_string(fixture("gnk_reference.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            GnkRow {
                n: f[0].parse().unwrap(),
                k: f[1].parse().unwrap(),
                m: f[2].parse().unwrap(),
                rho: f[3].parse().unwrap(),
                degrees: f[4].split(',').map(|d| d.parse().unwrap()).collect(),
            }
        })
        .collect()
}

pub fn graphs8() -> Vec<String> {
    std::fs::read_to_string(fixture("graphs8.g6"))
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

/// Whether some spanning subgraph of `g` is k-regular, by trying every
/// edge subset of the right size.
pub fn brute_force_has_k_factor(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if (n * k) % 2 == 1 {
        return false;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    edges.iter().combinations(n * k / 2).any(|subset| {
        let mut deg = vec![0usize; n];
        for &&(u, v) in &subset {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.iter().all(|&d| d == k)
    })
}

/// Tally of a property suite.
#[derive(Debug, Default)]
pub struct SuiteResult {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn skip_rate(&self) -> f64 {
        self.skipped as f64 / (self.checked + self.skipped).max(1) as f64
    }

    pub fn passed(&self, max_skip_rate: f64) -> bool {
        self.failures.is_empty() && self.skip_rate() < max_skip_rate
    }
}

/// Strict separation `hi(lower) < lo(upper)`, retried once at a tighter
/// tolerance.
fn separated(lower: &Graph, upper: &Graph, tol: f64) -> Result<bool, String> {
    for t in [tol, tol * 1e-3] {
        let a = rho(lower, t).map_err(|e| e.to_string())?;
        let b = rho(upper, t).map_err(|e| e.to_string())?;
        if a.hi < b.lo {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Deleting one edge of a connected graph strictly lowers `ρ`.
pub fn deletion_suite(instances: usize, seed: u64, tol: f64) -> SuiteResult {
    let mut rng = rng(seed);
    let mut out = SuiteResult::default();
    while out.checked + out.skipped < instances {
        let n = rng.random_range(2..=24);
        let p = rng.random_range(0.15..0.9);
        let g = connected_gnp(&mut rng, n, p);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let &(u, v) = edges.choose(&mut rng).unwrap();
        let h = g.remove_edge(u, v).unwrap();
        match separated(&h, &g, tol) {
            Ok(true) => out.checked += 1,
            Ok(false) => out.failures.push(format!(
                "{} minus {u}-{v}: enclosures overlap",
                graph6::encode(&g)
            )),
            Err(e) => out.failures.push(e),
        }
    }
    out
}

/// Rewiring `s` edges to `s` non-edges with no smaller Perron-weight sum,
/// where `a₁` avoids the deleted edges, strictly raises `ρ`.
///
/// Deleted edges are drawn from the lighter half by weight `x_u x_v`; added
/// non-edges are the heaviest ones (after fixing `a₁`). Draws that clearly
/// violate the hypothesis are discarded; those within `10 · residual` of the
/// boundary count as skipped.
pub fn rewiring_suite(instances: usize, seed: u64, tol: f64) -> SuiteResult {
    let mut rng = rng(seed);
    let mut out = SuiteResult::default();
    while out.checked + out.skipped < instances {
        let n = rng.random_range(5..=24);
        let p = rng.random_range(0.2..0.8);
        let g = connected_gnp(&mut rng, n, p);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let non_edges: Vec<(usize, usize)> = (0..n)
            .tuple_combinations()
            .filter(|&(a, b)| !g.has_edge(a, b))
            .collect();
        let s = rng.random_range(1..=2usize);
        if edges.len() < s || non_edges.len() < s {
            continue;
        }
        let est: SpectralEstimate = rho(&g, tol).unwrap();
        let x = &est.vector;
        let w = |(a, b): (usize, usize)| x[a] * x[b];
        let mut light = edges.clone();
        light.sort_by(|&p, &q| w(p).total_cmp(&w(q)));
        light.truncate(edges.len().div_ceil(2).max(s));
        let deleted: Vec<(usize, usize)> = light.choose_multiple(&mut rng, s).copied().collect();
        let touched = |v: usize| deleted.iter().any(|&(a, b)| a == v || b == v);
        let mut ranked = non_edges.clone();
        ranked.sort_by(|&p, &q| w(q).total_cmp(&w(p)));
        let Some(&first) = ranked.iter().find(|&&(a, b)| !touched(a) || !touched(b)) else {
            out.skipped += 1;
            continue;
        };
        // orient the first added edge so that a₁ is untouched
        let first = if touched(first.0) {
            (first.1, first.0)
        } else {
            first
        };
        let mut added = vec![first];
        added.extend(
            ranked
                .iter()
                .copied()
                .filter(|&e| e != (first.0.min(first.1), first.0.max(first.1)))
                .take(s - 1),
        );
        let lhs: f64 = deleted.iter().map(|&e| w(e)).sum();
        let rhs: f64 = added.iter().map(|&e| w(e)).sum();
        let margin = 10.0 * est.residual;
        if rhs - lhs < -margin {
            continue; // hypothesis fails outright: not an instance
        }
        if rhs - lhs < margin {
            out.skipped += 1;
            continue;
        }
        let mut h = g.clone();
        for &(a, b) in &deleted {
            h = h.remove_edge(a, b).unwrap();
        }
        for &(a, b) in &added {
            h = h.add_edge(a, b).unwrap();
        }
        match separated(&g, &h, tol) {
            Ok(true) => out.checked += 1,
            Ok(false) => out.failures.push(format!(
                "{}: delete {deleted:?}, add {added:?}: enclosures overlap",
                graph6::encode(&g)
            )),
            Err(e) => out.failures.push(e),
        }
    }
    out
}
