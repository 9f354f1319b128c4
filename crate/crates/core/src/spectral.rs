//! Certified enclosures of the adjacency spectral radius.
//!
//! Power iteration runs on `A + I` from the all-ones vector, one connected
//! component at a time. For the current positive iterate `x`, both
//!
//! * the Rayleigh quotient `xᵀAx / xᵀx`, and
//! * the Collatz–Wielandt minimum `min_i (Ax)_i / x_i`
//!
//! are lower bounds on `ρ`, while the Collatz–Wielandt maximum
//! `max_i (Ax)_i / x_i` is an upper bound. The upper end is further capped by
//! the maximum degree and by [`hsf_bound`]. Endpoints are widened by a few
//! ulps of floating-point slack.

use serde::{Deserialize, Serialize};

use crate::error::SpectralError;
use crate::graph::Graph;

/// Default enclosure width.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Interval `[lo, hi]` containing `ρ(G)`, plus the approximate Perron vector
/// it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub lo: f64,
    pub hi: f64,
    /// Nonnegative unit vector; supported on the dominant component.
    pub vector: Vec<f64>,
    /// `‖Ax − μx‖₂` for the returned vector, `μ` its Rayleigh quotient.
    pub residual: f64,
    pub iterations: usize,
    /// False when the iteration cap was hit before `hi - lo <= tol`.
    pub converged: bool,
}

impl SpectralEstimate {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Outcome of comparing two enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RhoOrdering {
    Less,
    Greater,
    /// The enclosures overlap; the order cannot be certified at this width.
    Ambiguous,
}

/// The bound `(δ−1)/2 + √(2m − nδ + (δ+1)²/4)` on the spectral radius of any
/// graph with `n` vertices, `m` edges and minimum degree at least `δ`.
pub fn hsf_bound(n: usize, m: usize, delta: usize) -> Result<f64, SpectralError> {
    let (n_, m_, d_) = (n as i128, m as i128, delta as i128);
    let radicand4 = 8 * m_ - 4 * n_ * d_ + (d_ + 1) * (d_ + 1);
    if radicand4 < 0 {
        return Err(SpectralError::InfeasibleBound { n, m, delta });
    }
    Ok((delta as f64 - 1.0) / 2.0 + (radicand4 as f64).sqrt() / 2.0)
}

fn iteration_cap(n: usize, tol: f64) -> usize {
    let log_term = (1.0 / tol).ln().max(1.0);
    (200.0 * n as f64 * log_term).ceil() as usize
}

struct ComponentEstimate {
    lo: f64,
    hi: f64,
    vector: Vec<f64>,
    residual: f64,
    iterations: usize,
    converged: bool,
}

/// Power iteration on `A + I` restricted to one connected component.
/// `local` holds neighbor lists in component-local indices.
fn component_radius(local: &[Vec<usize>], tol: f64, cap: usize) -> ComponentEstimate {
    let size = local.len();
    if size == 1 {
        return ComponentEstimate {
            lo: 0.0,
            hi: 0.0,
            vector: vec![1.0],
            residual: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let max_deg = local.iter().map(Vec::len).max().unwrap_or(0) as f64;
    let eps = f64::EPSILON;
    let ratio_slack = 2.0 * (max_deg + 2.0) * eps;
    let rq_slack = 2.0 * (size as f64 + max_deg + 2.0) * eps;

    let mut x = vec![1.0 / (size as f64).sqrt(); size];
    let mut y = vec![0.0; size];
    let mut best = (f64::NEG_INFINITY, f64::INFINITY);
    let mut iterations = 0;
    loop {
        for (i, nbrs) in local.iter().enumerate() {
            y[i] = nbrs.iter().map(|&j| x[j]).sum();
        }
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let xy: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let mu = xy / xx;
        let (mut cw_min, mut cw_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for (xi, yi) in x.iter().zip(&y) {
            let r = yi / xi;
            cw_min = cw_min.min(r);
            cw_max = cw_max.max(r);
        }
        let lo = (mu * (1.0 - rq_slack)).max(cw_min * (1.0 - ratio_slack));
        let hi = cw_max * (1.0 + ratio_slack);
        best = (best.0.max(lo), best.1.min(hi));
        iterations += 1;

        let done = best.1 - best.0 <= tol;
        if done || iterations >= cap {
            let norm = xx.sqrt();
            let residual = x
                .iter()
                .zip(&y)
                .map(|(a, b)| (b - mu * a) / norm)
                .map(|r| r * r)
                .sum::<f64>()
                .sqrt();
            let vector = x.iter().map(|v| v / norm).collect();
            return ComponentEstimate {
                lo: best.0,
                hi: best.1,
                vector,
                residual,
                iterations,
                converged: done,
            };
        }
        // shifted step: x <- (A + I) x, normalized
        let mut norm2 = 0.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
            norm2 += *xi * *xi;
        }
        let inv = 1.0 / norm2.sqrt();
        x.iter_mut().for_each(|v| *v *= inv);
    }
}

/// Certified enclosure of `ρ(g)` of width at most `tol` (unless the iteration
/// cap is reached, in which case `converged` is false).
pub fn rho(g: &Graph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    let mut est = power_enclosure(g, tol)?;
    if let Ok(b) = hsf_bound(g.order(), g.edge_count(), g.min_degree()) {
        est.hi = est.hi.min(b * (1.0 + 4.0 * f64::EPSILON));
    }
    est.hi = est.hi.min(g.max_degree() as f64);
    est.lo = est.lo.min(est.hi).max(0.0);
    est.converged |= est.hi - est.lo <= tol;
    Ok(est)
}

/// The enclosure from power iteration alone, before capping by the
/// closed-form bounds. Useful for testing those bounds independently.
pub fn power_enclosure(g: &Graph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    let n = g.order();
    if n == 0 {
        return Err(SpectralError::NullGraph);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let cap = iteration_cap(n, tol);
    let adj = g.adjacency_lists();
    let mut local_index = vec![0usize; n];

    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut dominant: Option<(Vec<usize>, ComponentEstimate)> = None;
    let mut iterations = 0;
    let mut converged = true;
    for comp in g.components() {
        for (i, &v) in comp.iter().enumerate() {
            local_index[v] = i;
        }
        let local: Vec<Vec<usize>> = comp
            .iter()
            .map(|&v| adj[v].iter().map(|&u| local_index[u]).collect())
            .collect();
        let est = component_radius(&local, tol, cap);
        iterations = iterations.max(est.iterations);
        converged &= est.converged;
        hi = hi.max(est.hi);
        if est.lo > lo {
            lo = est.lo;
            dominant = Some((comp, est));
        }
    }

    lo = lo.max(0.0);

    let (comp, est) = dominant.expect("at least one component");
    let mut vector = vec![0.0; n];
    for (i, &v) in comp.iter().enumerate() {
        vector[v] = est.vector[i];
    }
    Ok(SpectralEstimate {
        lo,
        hi,
        vector,
        residual: est.residual,
        iterations,
        converged: converged || hi - lo <= tol,
    })
}

/// Orders two enclosures when they are disjoint.
pub fn compare_estimates(a: &SpectralEstimate, b: &SpectralEstimate) -> RhoOrdering {
    if a.hi < b.lo {
        RhoOrdering::Less
    } else if a.lo > b.hi {
        RhoOrdering::Greater
    } else {
        RhoOrdering::Ambiguous
    }
}

/// Compares `ρ(g1)` with `ρ(g2)` at enclosure width `tol`.
pub fn compare_rho(g1: &Graph, g2: &Graph, tol: f64) -> Result<RhoOrdering, SpectralError> {
    Ok(compare_estimates(&rho(g1, tol)?, &rho(g2, tol)?))
}
