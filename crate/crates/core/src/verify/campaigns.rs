use std::collections::BTreeSet;
use std::io::BufRead;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{Record, ReportParams, VerificationReport};
use super::{in_theorem_range, recognize_gnk, verify_against, TheoremOptions, Verdict};
use crate::error::VerifyError;
use crate::factor::{
    factor_by_matching, search_certificate_with, SearchOptions, DEFAULT_EXHAUSTIVE_CAP,
};
use crate::graph::{build_base_family_member, build_gnk, graph6, GnkParams, Graph};
use crate::spectral::{hsf_bound, power_enclosure, rho, SpectralEstimate, DEFAULT_TOL};

/// Required gap between `G_{n,k}` and the other family members.
pub const EXTREMALITY_MARGIN: f64 = 1e-6;

/// Slack allowed when comparing the degree bound with a computed enclosure.
pub const HSF_SLACK: f64 = 1e-9;

/// Largest order for the internal labeled enumeration.
pub const INTERNAL_MAX_ORDER: usize = 6;

/// Largest order accepted from a graph6 stream.
pub const STREAM_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignOptions {
    pub tol: f64,
    /// Largest order for exhaustive certificate search.
    pub cap: usize,
    /// Run outside the theorem's range; violations there are informational.
    pub force: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Store wall-clock time in the report (breaks byte-reproducibility).
    pub record_runtime: bool,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            tol: DEFAULT_TOL,
            cap: DEFAULT_EXHAUSTIVE_CAP,
            force: false,
            jobs: None,
            record_runtime: false,
        }
    }
}

impl CampaignOptions {
    fn theorem(&self) -> TheoremOptions {
        let mut t = TheoremOptions {
            tol: self.tol,
            ..TheoremOptions::default()
        };
        t.factor.search.cap = self.cap;
        t
    }

    fn params(&self, n: usize, k: usize) -> ReportParams {
        ReportParams {
            n,
            k,
            seed: None,
            trials: None,
            density: None,
            tol: self.tol,
            cap: self.cap,
            in_theorem_range: in_theorem_range(n, k),
            forced: self.force,
            source: None,
        }
    }

    /// Runs `f` on the configured pool.
    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, VerifyError> {
        match self.jobs {
            None => Ok(f()),
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map(|pool| pool.install(f))
                .map_err(|e| VerifyError::Params(format!("thread pool: {e}"))),
        }
    }
}

/// Where the exhaustive campaign gets its graphs.
pub enum GraphSource<'a> {
    /// Every labeled graph on `n ≤ 6` vertices.
    Internal,
    /// graph6 lines, one graph each, labeled by `name` in the report.
    Stream {
        reader: &'a mut dyn BufRead,
        name: String,
    },
}

/// Everything learned about one graph.
#[derive(Debug, Default)]
struct Examination {
    verdict: Option<Verdict>,
    oracle: Option<(bool, u64, u64)>,
    formula1: Option<bool>,
    hsf: Option<Result<(), String>>,
    error: Option<String>,
}

struct Examiner {
    n: usize,
    k: usize,
    reference: Option<(Graph, SpectralEstimate)>,
    theorem: TheoremOptions,
    oracle: bool,
    hsf: bool,
}

impl Examiner {
    fn new(
        n: usize,
        k: usize,
        opts: &CampaignOptions,
        oracle: bool,
        hsf: bool,
    ) -> Result<Self, VerifyError> {
        let reference = if k >= 2 && n >= 3 * k {
            let g = build_gnk(GnkParams { n, k })?;
            let est = rho(&g, opts.tol)?;
            Some((g, est))
        } else {
            None
        };
        Ok(Examiner {
            n,
            k,
            reference,
            theorem: opts.theorem(),
            oracle: oracle && n <= opts.cap,
            hsf,
        })
    }

    fn examine(&self, g: &Graph) -> Examination {
        let mut out = Examination::default();
        if let Err(e) = self.examine_into(g, &mut out) {
            out.error = Some(e.to_string());
        }
        out
    }

    fn examine_into(&self, g: &Graph, out: &mut Examination) -> Result<(), VerifyError> {
        let (n, k) = (self.n, self.k);
        let mut est = None;
        if let Some((reference, reference_rho)) = &self.reference {
            let (verdict, e) = verify_against(g, k, reference, reference_rho, &self.theorem)?;
            out.verdict = Some(verdict);
            est = e;
        }
        if self.oracle {
            let opts = SearchOptions {
                cap: self.theorem.factor.search.cap,
                ..SearchOptions::default()
            };
            let (witness, stats) = search_certificate_with(g, k, &opts)?;
            let factor = factor_by_matching(g, k)?;
            out.oracle = Some((
                witness.is_none() == factor.is_some(),
                stats.evaluations,
                stats.parity_failures,
            ));
        }
        if g.min_degree() >= k {
            let est = match est {
                Some(e) => e,
                None => rho(g, self.theorem.tol)?,
            };
            if est.lo > (n as f64) - 2.0 - k as f64 {
                out.formula1 = Some(formula1_holds(g, k));
            }
        }
        if self.hsf {
            let bound = hsf_bound(n, g.edge_count(), g.min_degree())?;
            let raw = power_enclosure(g, self.theorem.tol)?;
            out.hsf = Some(if bound >= raw.hi - HSF_SLACK {
                Ok(())
            } else {
                Err(format!(
                    "degree bound {bound} below enclosure [{}, {}]",
                    raw.lo, raw.hi
                ))
            });
        }
        Ok(())
    }
}

/// `e(Ḡ) < (k+1)n − (k+1)²`.
pub(crate) fn formula1_holds(g: &Graph, k: usize) -> bool {
    let n = g.order() as i64;
    let k1 = k as i64 + 1;
    let missing = n * (n - 1) / 2 - g.edge_count() as i64;
    missing < k1 * n - k1 * k1
}

/// Folds examinations into the report. Theorem violations count as failures
/// only inside the theorem's range.
fn tally(
    report: &mut VerificationReport,
    graphs: &[Graph],
    results: Vec<Examination>,
    strict_theorem: bool,
) {
    for (g, r) in graphs.iter().zip(results) {
        let c = &mut report.counters;
        c.examined += 1;
        let record = |detail: String| Record {
            graph6: graph6::encode(g),
            detail,
        };
        if let Some(e) = r.error {
            c.errors += 1;
            report.failures.push(record(format!("error: {e}")));
            continue;
        }
        match &r.verdict {
            None => c.unreferenced += 1,
            Some(Verdict::VacuousHypothesis { .. }) => c.vacuous += 1,
            Some(Verdict::FactorFound) => c.factor_found += 1,
            Some(Verdict::ExtremalEquality) => c.extremal_matches += 1,
            Some(Verdict::Violation { .. }) => c.violations += 1,
            Some(Verdict::Ambiguous { .. }) => c.ambiguous += 1,
        }
        match &r.verdict {
            Some(Verdict::VacuousHypothesis { .. }) | None => {}
            Some(_) => c.hypothesis_satisfied += 1,
        }
        if let Some((agree, evaluations, parity)) = r.oracle {
            c.oracle_checks += 1;
            c.deficiency_evaluations += evaluations;
            c.parity_failures += parity;
            if !agree {
                c.oracle_disagreements += 1;
                report
                    .failures
                    .push(record("certificate search and matching disagree".into()));
            }
            if parity > 0 {
                report.failures.push(record(format!(
                    "{parity} deficiency values with the wrong parity"
                )));
            }
        }
        if let Some(ok) = r.formula1 {
            c.formula1_checks += 1;
            if !ok {
                c.formula1_failures += 1;
                report.failures.push(record(
                    "complement has too many edges for its spectral radius".into(),
                ));
            }
        }
        if let Some(res) = r.hsf {
            c.hsf_checks += 1;
            if let Err(detail) = res {
                c.hsf_failures += 1;
                report.failures.push(record(detail));
            }
        }
        match r.verdict {
            Some(v @ Verdict::Violation { .. }) => {
                let detail = serde_json::to_string(&v).expect("verdict serializes");
                if strict_theorem {
                    report.failures.push(record(detail));
                } else {
                    report.observations.push(record(detail));
                }
            }
            Some(v @ Verdict::Ambiguous { .. }) => {
                report.failures.push(record(
                    serde_json::to_string(&v).expect("verdict serializes"),
                ));
            }
            _ => {}
        }
    }
}

fn check_range(n: usize, k: usize, opts: &CampaignOptions) -> Result<(), VerifyError> {
    if !opts.force && !in_theorem_range(n, k) {
        return Err(VerifyError::OutOfRange(format!(
            "need n >= max(k^2+6k+7, 20k+10) and kn even, got n={n}, k={k}"
        )));
    }
    Ok(())
}

fn stamp(report: &mut VerificationReport, start: Instant, opts: &CampaignOptions) {
    report.finish();
    if opts.record_runtime {
        report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    }
}

/// Adds each non-edge of `G_{n,k}` in turn and demands a k-factor.
pub fn edge_addition_sweep(
    n: usize,
    k: usize,
    opts: &CampaignOptions,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    check_range(n, k, opts)?;
    let base = build_gnk(GnkParams::new(n, k)?)?;
    let non_edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| !base.has_edge(u, v))
        .collect();
    let graphs: Vec<Graph> = non_edges
        .iter()
        .map(|&(u, v)| base.add_edge(u, v))
        .collect::<Result<_, _>>()?;
    let examiner = Examiner::new(n, k, opts, false, false)?;
    let results = opts.install(|| {
        graphs
            .par_iter()
            .map(|g| examiner.examine(g))
            .collect::<Vec<_>>()
    })?;

    let mut report = VerificationReport::new("sweep", opts.params(n, k));
    let strict = report.params.in_theorem_range;
    let misses: Vec<(Graph, String)> = graphs
        .iter()
        .zip(&results)
        .filter(|(_, r)| r.error.is_none() && !matches!(r.verdict, Some(Verdict::FactorFound)))
        .map(|(g, r)| {
            (
                g.clone(),
                r.verdict
                    .as_ref()
                    .map_or("none", Verdict::label)
                    .to_string(),
            )
        })
        .collect();
    tally(&mut report, &graphs, results, strict);
    for (g, label) in misses {
        if matches!(label.as_str(), "violation" | "ambiguous") {
            continue; // already recorded by tally
        }
        let record = Record {
            graph6: graph6::encode(&g),
            detail: format!("expected factor_found, got {label}"),
        };
        if strict {
            report.failures.push(record);
        } else {
            report.observations.push(record);
        }
    }
    stamp(&mut report, start, opts);
    Ok(report)
}

/// Attachment patterns of the Claim-2 family up to permuting the independent
/// block and the clique, each as a sorted list of `(U-index, C-index)` pairs.
pub fn attachment_classes(n: usize, k: usize) -> Result<Vec<Vec<(usize, usize)>>, VerifyError> {
    let p = GnkParams::new(n, k)?;
    if k > 4 {
        return Err(VerifyError::Params(format!(
            "pattern enumeration supports k <= 4, got {k}"
        )));
    }
    let edges = k - 1;
    // at most k−1 distinct indices are used on each side
    let u_side = edges.min(k + 1);
    let c_side = edges.min(p.layout().c_len());
    let cells: Vec<(usize, usize)> = (0..u_side).cartesian_product(0..c_side).collect();
    let u_perms: Vec<Vec<usize>> = (0..u_side).permutations(u_side).collect();
    let c_perms: Vec<Vec<usize>> = (0..c_side).permutations(c_side).collect();
    let mut classes = BTreeSet::new();
    for pattern in cells.iter().copied().combinations(edges) {
        let canonical = u_perms
            .iter()
            .cartesian_product(&c_perms)
            .map(|(pu, pc)| {
                let mut image: Vec<_> = pattern.iter().map(|&(a, b)| (pu[a], pc[b])).collect();
                image.sort_unstable();
                image
            })
            .min()
            .expect("nonempty permutation sets");
        classes.insert(canonical);
    }
    Ok(classes.into_iter().collect())
}

/// Compares `G_{n,k}` with every other member of the Claim-2 family.
pub fn lemma5_restricted_extremality(
    n: usize,
    k: usize,
    opts: &CampaignOptions,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    if !opts.force && 2 * n < k * k + 6 * k + 2 {
        return Err(VerifyError::OutOfRange(format!(
            "need n >= k^2/2 + 3k + 1, got n={n}, k={k}"
        )));
    }
    let classes = attachment_classes(n, k)?;
    let gnk = build_gnk(GnkParams { n, k })?;
    let members: Vec<Graph> = classes
        .iter()
        .map(|pattern| build_base_family_member(n, k, pattern))
        .collect::<Result<_, _>>()?;
    let estimates = opts.install(|| {
        std::iter::once(&gnk)
            .chain(&members)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|g| rho(g, opts.tol))
            .collect::<Result<Vec<_>, _>>()
    })??;
    let gnk_lo = estimates[0].lo;

    let mut report = VerificationReport::new("lemma5", opts.params(n, k));
    let strict = 2 * n >= k * k + 6 * k + 2;
    report.metrics.insert("gnk_lo".into(), gnk_lo);
    report.metrics.insert("gnk_hi".into(), estimates[0].hi);
    report
        .metrics
        .insert("patterns".into(), classes.len() as f64);
    let mut min_margin = f64::INFINITY;
    for ((g, est), pattern) in members.iter().zip(&estimates[1..]).zip(&classes) {
        let c = &mut report.counters;
        c.examined += 1;
        c.hypothesis_satisfied += 1;
        if recognize_gnk(g, k) {
            c.extremal_matches += 1;
            continue;
        }
        let margin = gnk_lo - est.hi;
        min_margin = min_margin.min(margin);
        if margin >= EXTREMALITY_MARGIN {
            c.separated += 1;
        } else {
            c.violations += 1;
            let record = Record {
                graph6: graph6::encode(g),
                detail: format!(
                    "pattern {pattern:?}: enclosure [{}, {}] within {margin} of G_{{n,k}}",
                    est.lo, est.hi
                ),
            };
            if strict {
                report.failures.push(record);
            } else {
                report.observations.push(record);
            }
        }
    }
    if min_margin.is_finite() {
        report.metrics.insert("min_margin".into(), min_margin);
    }
    stamp(&mut report, start, opts);
    Ok(report)
}

/// Theorem check, oracle cross-check and bound checks over every labeled
/// graph on `n ≤ 6` vertices or over a graph6 stream.
pub fn exhaustive_small_campaign(
    n: usize,
    k: usize,
    source: GraphSource<'_>,
    opts: &CampaignOptions,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    if k == 0 {
        return Err(VerifyError::Params("k must be positive".into()));
    }
    let mut params = opts.params(n, k);
    let mut malformed = Vec::new();
    let graphs: Vec<Graph> = match source {
        GraphSource::Internal => {
            if n == 0 || n > INTERNAL_MAX_ORDER {
                return Err(VerifyError::Params(format!(
                    "internal enumeration needs 1 <= n <= {INTERNAL_MAX_ORDER}, got {n}"
                )));
            }
            params.source = Some("internal".into());
            labeled_graphs(n)
        }
        GraphSource::Stream { reader, name } => {
            if n == 0 || n > STREAM_MAX_ORDER {
                return Err(VerifyError::Params(format!(
                    "streamed input needs 1 <= n <= {STREAM_MAX_ORDER}, got {n}"
                )));
            }
            params.source = Some(name);
            let mut graphs = Vec::new();
            for (line, item) in graph6::read_stream(reader) {
                match item {
                    Ok(g) if g.order() == n => graphs.push(g),
                    Ok(g) => malformed.push(format!(
                        "line {line}: order {} where {n} was expected",
                        g.order()
                    )),
                    Err(e) => malformed.push(format!("line {line}: {e}")),
                }
            }
            graphs
        }
    };
    let examiner = Examiner::new(n, k, opts, true, true)?;
    let results = opts.install(|| {
        graphs
            .par_iter()
            .map(|g| examiner.examine(g))
            .collect::<Vec<_>>()
    })?;

    let mut report = VerificationReport::new("exhaustive", params);
    let strict = report.params.in_theorem_range;
    tally(&mut report, &graphs, results, strict);
    report.counters.malformed_lines = malformed.len() as u64;
    report.malformed = malformed;
    stamp(&mut report, start, opts);
    Ok(report)
}

/// All `2^{C(n,2)}` labeled graphs on `n` vertices, in mask order.
fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("valid edge list")
        })
        .collect()
}

/// The graph drawn for `trial`: each pair is an edge with probability
/// `density`, from a ChaCha8 stream selected by the trial index.
pub fn sample_graph(n: usize, density: f64, seed: u64, trial: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.random_bool(density))
        .collect();
    Graph::from_edges(n, &edges).expect("valid edge list")
}

/// Seeded random graphs checked against the theorem. `density` defaults to
/// `1 − (k+2)/n`.
pub fn random_campaign(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
    density: Option<f64>,
    opts: &CampaignOptions,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    check_range(n, k, opts)?;
    GnkParams::new(n, k)?;
    let density = density.unwrap_or(1.0 - (k as f64 + 2.0) / n as f64);
    if !(0.0..=1.0).contains(&density) {
        return Err(VerifyError::Params(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let examiner = Examiner::new(n, k, opts, true, false)?;
    let (graphs, results) = opts.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let g = sample_graph(n, density, seed, t);
                let r = examiner.examine(&g);
                (g, r)
            })
            .unzip::<_, _, Vec<_>, Vec<_>>()
    })?;
    let mut params = opts.params(n, k);
    params.seed = Some(seed);
    params.trials = Some(trials);
    params.density = Some(density);
    let mut report = VerificationReport::new("random", params);
    let strict = report.params.in_theorem_range;
    tally(&mut report, &graphs, results, strict);
    stamp(&mut report, start, opts);
    Ok(report)
}
