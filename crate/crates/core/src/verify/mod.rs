//! Checks of the spectral k-factor theorem on concrete graphs.
//!
//! [`verify_theorem_on`] classifies one graph against the extremal graph
//! `G_{n,k}`; the campaign functions run it over constructed, enumerated or
//! sampled populations and collect a [`VerificationReport`].
//!
//! Equality with `G_{n,k}` is decided by [`recognize_gnk`], never from the
//! floating-point enclosures.

mod campaigns;
mod report;

pub use campaigns::{
    attachment_classes, edge_addition_sweep, exhaustive_small_campaign,
    lemma5_restricted_extremality, random_campaign, sample_graph, CampaignOptions, GraphSource,
};
pub use report::{
    canonical_json, format_float, Counters, Record, ReportParams, ReportVerdict, VerificationReport,
};

use serde::{Deserialize, Serialize};

use crate::error::VerifyError;
use crate::factor::{has_k_factor_with, FactorOptions, FactorOutcome};
use crate::graph::{GnkParams, Graph};
use crate::spectral::{compare_estimates, rho, RhoOrdering, SpectralEstimate, DEFAULT_TOL};

/// Smallest tolerance used when an ambiguous comparison is retried.
pub const MIN_TOL: f64 = 1e-13;

/// True when `(n, k)` satisfies `n ≥ max{k² + 6k + 7, 20k + 10}` and `kn`
/// is even.
pub fn in_theorem_range(n: usize, k: usize) -> bool {
    k >= 1 && n >= (k * k + 6 * k + 7).max(20 * k + 10) && (k * n).is_multiple_of(2)
}

/// Structural test for `g ≅ G_{n,k}`.
///
/// Looks for exactly `k` dominating vertices `S'`; in `G − S'` there must be
/// exactly `k` isolated vertices, and the rest must be one vertex `u` with
/// `k − 1` neighbors plus a clique on `n − 1 − 2k` vertices containing all of
/// them.
pub fn recognize_gnk(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if k < 2 || n < 3 * k {
        return false;
    }
    if g.edge_count() != (GnkParams { n, k }).edge_count() {
        return false;
    }
    let dominating: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    if dominating.len() != k {
        return false;
    }
    let mut removed = vec![false; n];
    dominating.iter().for_each(|&v| removed[v] = true);
    let h_degree = |v: usize| g.neighbors(v).filter(|&w| !removed[w]).count();
    let rest: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let isolated = rest.iter().filter(|&&v| h_degree(v) == 0).count();
    if isolated != k {
        return false;
    }
    let core: Vec<usize> = rest.into_iter().filter(|&v| h_degree(v) > 0).collect();
    let clique_len = n - 1 - 2 * k;
    core.iter().filter(|&&u| h_degree(u) == k - 1).any(|&u| {
        let clique: Vec<usize> = core.iter().copied().filter(|&v| v != u).collect();
        clique.len() == clique_len
            && clique
                .iter()
                .enumerate()
                .all(|(i, &a)| clique[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// Why the theorem's hypothesis fails for a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VacuousReason {
    MinDegree,
    OddProduct,
    SpectralRadiusBelow,
}

/// A certified interval for a spectral radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl From<&SpectralEstimate> for Enclosure {
    fn from(e: &SpectralEstimate) -> Self {
        Enclosure { lo: e.lo, hi: e.hi }
    }
}

/// What was known when a graph could not be cleared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub graph: Enclosure,
    pub reference: Enclosure,
    pub tol: f64,
    pub outcome: FactorOutcome,
}

/// Per-graph outcome of checking the theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    VacuousHypothesis {
        reason: VacuousReason,
    },
    FactorFound,
    /// `g` is `G_{n,k}` itself.
    ExtremalEquality,
    /// `ρ(g) > ρ(G_{n,k})`, `g ≠ G_{n,k}` and no k-factor.
    Violation {
        evidence: Box<Evidence>,
    },
    /// Enclosures overlap even after tightening and no factor was found.
    Ambiguous {
        evidence: Box<Evidence>,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::VacuousHypothesis { .. } => "vacuous_hypothesis",
            Verdict::FactorFound => "factor_found",
            Verdict::ExtremalEquality => "extremal_equality",
            Verdict::Violation { .. } => "violation",
            Verdict::Ambiguous { .. } => "ambiguous",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremOptions {
    pub tol: f64,
    pub factor: FactorOptions,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions {
            tol: DEFAULT_TOL,
            factor: FactorOptions::default(),
        }
    }
}

pub fn verify_theorem_on(g: &Graph, k: usize, reference: &Graph) -> Result<Verdict, VerifyError> {
    verify_theorem_on_with(g, k, reference, &TheoremOptions::default())
}

/// Classifies `g` against `reference` (normally `G_{n,k}`).
pub fn verify_theorem_on_with(
    g: &Graph,
    k: usize,
    reference: &Graph,
    opts: &TheoremOptions,
) -> Result<Verdict, VerifyError> {
    let reference_rho = rho(reference, opts.tol)?;
    verify_against(g, k, reference, &reference_rho, opts).map(|(v, _)| v)
}

/// As [`verify_theorem_on_with`] with the reference enclosure precomputed.
/// Also returns the enclosure of `g` when one was computed.
pub(crate) fn verify_against(
    g: &Graph,
    k: usize,
    reference: &Graph,
    reference_rho: &SpectralEstimate,
    opts: &TheoremOptions,
) -> Result<(Verdict, Option<SpectralEstimate>), VerifyError> {
    let n = g.order();
    if n != reference.order() {
        return Err(VerifyError::OrderMismatch {
            graph: n,
            reference: reference.order(),
        });
    }
    if k == 0 {
        return Err(VerifyError::Params("k must be positive".into()));
    }
    if g.min_degree() < k {
        return Ok((vacuous(VacuousReason::MinDegree), None));
    }
    if (k * n) % 2 == 1 {
        return Ok((vacuous(VacuousReason::OddProduct), None));
    }
    if recognize_gnk(g, k) {
        return Ok((Verdict::ExtremalEquality, None));
    }
    let mut tol = opts.tol;
    let mut est = rho(g, tol)?;
    let mut reference_est = reference_rho.clone();
    let mut order = compare_estimates(&est, &reference_est);
    if order == RhoOrdering::Ambiguous {
        tol = (tol * 1e-3).max(MIN_TOL);
        est = rho(g, tol)?;
        reference_est = rho(reference, tol)?;
        order = compare_estimates(&est, &reference_est);
    }
    if order == RhoOrdering::Less {
        return Ok((vacuous(VacuousReason::SpectralRadiusBelow), Some(est)));
    }
    let outcome = has_k_factor_with(g, k, &opts.factor)?;
    if outcome.has_factor() {
        return Ok((Verdict::FactorFound, Some(est)));
    }
    let evidence = Box::new(Evidence {
        graph: (&est).into(),
        reference: (&reference_est).into(),
        tol,
        outcome,
    });
    let verdict = match order {
        RhoOrdering::Greater => Verdict::Violation { evidence },
        _ => Verdict::Ambiguous { evidence },
    };
    Ok((verdict, Some(est)))
}

fn vacuous(reason: VacuousReason) -> Verdict {
    Verdict::VacuousHypothesis { reason }
}
