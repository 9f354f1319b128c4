//! `kfs`: build extremal graphs, bound spectral radii, decide k-factors and
//! run verification campaigns. Graphs travel as graph6 lines on standard
//! input/output so subcommands compose with pipes.
//!
//! Exit status: 0 on success or a passing campaign, 1 on a failed campaign or
//! invalid input, 2 on a usage error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kfs_core::factor::{
    has_k_factor_with, FactorOptions, SearchOptions, TieBreak, DEFAULT_EXHAUSTIVE_CAP,
};
use kfs_core::graph::graph6;
use kfs_core::spectral::DEFAULT_TOL;
use kfs_core::verify::{
    canonical_json, edge_addition_sweep, exhaustive_small_campaign, lemma5_restricted_extremality,
    random_campaign, verify_theorem_on_with, CampaignOptions, GraphSource, TheoremOptions, Verdict,
    VerificationReport,
};
use kfs_core::{build_gnk, deficiency, hsf_bound, rho, FactorOutcome, GnkParams, Graph};
use serde_json::json;

#[derive(Parser)]
#[command(name = "kfs", version, about = "Spectral radius and k-factor toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the main output here instead of standard output. Campaigns
    /// always write JSON to this file and a table to standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for campaigns.
    #[arg(long, global = true, env = "KFS_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Input {
    /// graph6 file; standard input when omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print G_{n,k} in graph6.
    BuildGnk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Certified enclosure of the spectral radius.
    Rho {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Find a k-factor or a reason why none exists.
    Kfactor {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Largest order for the witness search.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
        /// Report the largest maximal-deficiency witness instead of the smallest.
        #[arg(long)]
        largest: bool,
    },
    /// Evaluate the deficiency of a given pair (S, T).
    Deficiency {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// Comma-separated vertices of S.
        #[arg(long = "S", value_delimiter = ',', num_args = 0..)]
        s: Vec<usize>,
        /// Comma-separated vertices of T.
        #[arg(long = "T", value_delimiter = ',', num_args = 0..)]
        t: Vec<usize>,
    },
    /// The degree-based upper bound on the spectral radius.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        delta: usize,
    },
    /// Verification campaigns.
    Verify {
        #[command(subcommand)]
        campaign: Campaign,
    },
    /// graph6 from a vertex count and an edge list such as `0-1,1-2`.
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        edges: Vec<String>,
    },
    /// Edge list of each graph6 line.
    Decode {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Clone, Copy)]
struct CampaignFlags {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Largest order for exhaustive certificate search.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    cap: usize,
    /// Run outside the theorem's range; violations there are only noted.
    #[arg(long)]
    force: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Campaign {
    /// Check one graph against G_{n,k}.
    Theorem {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Add each non-edge of G_{n,k} and demand a k-factor.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        flags: CampaignFlags,
    },
    /// G_{n,k} against the other attachment patterns.
    Lemma5 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        flags: CampaignFlags,
    },
    /// All labeled graphs (n <= 6) or a graph6 file (n <= 10).
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// graph6 file; the internal enumeration when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        flags: CampaignFlags,
    },
    /// Seeded random graphs.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability; 1 - (k+2)/n when omitted.
        #[arg(long)]
        density: Option<f64>,
        #[command(flatten)]
        flags: CampaignFlags,
    },
}

/// A failed run; exits with status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("kfs: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::BuildGnk { n, k } => {
            let g = build_gnk(GnkParams::new(*n, *k)?)?;
            emit(cli, &format!("{}\n", graph6::encode(&g)))
        }
        Command::Rho { input, tol } => {
            let g = read_one(input)?;
            let est = rho(&g, *tol)?;
            let text = match cli.format {
                Format::Json => canonical_json(&serde_json::to_value(&est)?),
                Format::Table => format!(
                    "rho in [{:.12}, {:.12}]  width {:.3e}  iterations {}{}\n",
                    est.lo,
                    est.hi,
                    est.width(),
                    est.iterations,
                    if est.converged {
                        ""
                    } else {
                        "  (not converged)"
                    }
                ),
            };
            emit(cli, &text)
        }
        Command::Kfactor {
            input,
            k,
            cap,
            largest,
        } => {
            let g = read_one(input)?;
            let opts = FactorOptions {
                search: SearchOptions {
                    cap: *cap,
                    tie_break: if *largest {
                        TieBreak::Largest
                    } else {
                        TieBreak::Smallest
                    },
                },
            };
            let outcome = has_k_factor_with(&g, *k, &opts)?;
            let text = match cli.format {
                Format::Json => canonical_json(&serde_json::to_value(&outcome)?),
                Format::Table => outcome_table(&outcome, *k),
            };
            emit(cli, &text)
        }
        Command::Deficiency { input, k, s, t } => {
            let g = read_one(input)?;
            let w = deficiency(&g, s, t, *k)?;
            let text = match cli.format {
                Format::Json => canonical_json(&serde_json::to_value(&w)?),
                Format::Table => format!(
                    "delta = {}  (tau {}, q {}, S {:?}, T {:?})\n",
                    w.delta, w.tau, w.q, w.s, w.t
                ),
            };
            emit(cli, &text)
        }
        Command::Bound { n, m, delta } => {
            let b = hsf_bound(*n, *m, *delta)?;
            let text = match cli.format {
                Format::Json => canonical_json(&json!({ "bound": b })),
                Format::Table => format!("{b:?}\n"),
            };
            emit(cli, &text)
        }
        Command::Encode { n, edges } => {
            let edges = edges
                .iter()
                .map(|e| parse_edge(e))
                .collect::<Result<Vec<_>, _>>()?;
            let g = Graph::from_edges(*n, &edges)?;
            emit(cli, &format!("{}\n", graph6::encode(&g)))
        }
        Command::Decode { input } => {
            let mut text = String::new();
            for (line, item) in graph6::read_stream(open(input)?) {
                let g = item.map_err(|e| Failure(format!("line {line}: {e}")))?;
                let edges: Vec<(usize, usize)> = g.edges().collect();
                match cli.format {
                    Format::Json => text.push_str(&serde_json::to_string(
                        &json!({ "n": g.order(), "edges": edges }),
                    )?),
                    Format::Table => {
                        text.push_str(&format!("n={} m={}", g.order(), edges.len()));
                        for (u, v) in edges {
                            text.push_str(&format!(" {u}-{v}"));
                        }
                    }
                }
                text.push('\n');
            }
            emit(cli, &text)
        }
        Command::Verify { campaign } => verify(cli, campaign),
    }
}

fn verify(cli: &Cli, campaign: &Campaign) -> Outcome {
    let options = |flags: &CampaignFlags| CampaignOptions {
        tol: flags.tol,
        cap: flags.cap,
        force: flags.force,
        jobs: cli.jobs,
        record_runtime: flags.timing,
    };
    let report = match campaign {
        Campaign::Theorem { input, k, tol } => {
            let g = read_one(input)?;
            let reference = build_gnk(GnkParams::new(g.order(), *k)?)?;
            let opts = TheoremOptions {
                tol: *tol,
                ..TheoremOptions::default()
            };
            let verdict = verify_theorem_on_with(&g, *k, &reference, &opts)?;
            let text = match cli.format {
                Format::Json => canonical_json(&serde_json::to_value(&verdict)?),
                Format::Table => format!("{}\n", verdict.label()),
            };
            emit(cli, &text)?;
            return Ok(!matches!(
                verdict,
                Verdict::Violation { .. } | Verdict::Ambiguous { .. }
            ));
        }
        Campaign::Sweep { n, k, flags } => edge_addition_sweep(*n, *k, &options(flags))?,
        Campaign::Lemma5 { n, k, flags } => lemma5_restricted_extremality(*n, *k, &options(flags))?,
        Campaign::Exhaustive { n, k, input, flags } => match input {
            None => exhaustive_small_campaign(*n, *k, GraphSource::Internal, &options(flags))?,
            Some(path) => {
                let mut reader = BufReader::new(
                    File::open(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                );
                let source = GraphSource::Stream {
                    reader: &mut reader,
                    name: path.display().to_string(),
                };
                exhaustive_small_campaign(*n, *k, source, &options(flags))?
            }
        },
        Campaign::Random {
            n,
            k,
            trials,
            seed,
            density,
            flags,
        } => random_campaign(*n, *k, *trials, *seed, *density, &options(flags))?,
    };
    emit_report(cli, &report)?;
    Ok(report.passed())
}

fn emit_report(cli: &Cli, report: &VerificationReport) -> Result<(), Failure> {
    if let Some(path) = &cli.out {
        std::fs::write(path, report.to_json())
            .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    io::stdout().write_all(text.as_bytes())?;
    Ok(())
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(true)
}

fn outcome_table(outcome: &FactorOutcome, k: usize) -> String {
    match outcome {
        FactorOutcome::Factor { edges } => {
            let list: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            format!("{k}-factor found: {}\n", list.join(" "))
        }
        FactorOutcome::NoFactor {
            witness: Some(w),
            reason,
        } => format!(
            "no {k}-factor ({reason:?}): S={:?} T={:?} delta={} tau={} q={}\n",
            w.s, w.t, w.delta, w.tau, w.q
        ),
        FactorOutcome::NoFactor {
            witness: None,
            reason,
        } => format!("no {k}-factor ({reason:?}), no set witness\n"),
    }
}

fn parse_edge(text: &str) -> Result<(usize, usize), Failure> {
    let (u, v) = text
        .split_once('-')
        .ok_or_else(|| Failure(format!("edge {text:?} is not of the form u-v")))?;
    Ok((u.trim().parse()?, v.trim().parse()?))
}

fn open(input: &Input) -> Result<Box<dyn BufRead>, Failure> {
    Ok(match &input.input {
        Some(path) => Box::new(BufReader::new(
            File::open(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

/// The single graph on the input.
fn read_one(input: &Input) -> Result<Graph, Failure> {
    let mut text = String::new();
    open(input)?.read_to_string(&mut text)?;
    let mut graphs = graph6::read_stream(text.as_bytes());
    let (line, first) = graphs
        .next()
        .ok_or_else(|| Failure("no graph on input".into()))?;
    let g = first.map_err(|e| Failure(format!("line {line}: {e}")))?;
    if graphs.next().is_some() {
        return Err(Failure("expected exactly one graph on input".into()));
    }
    Ok(g)
}
