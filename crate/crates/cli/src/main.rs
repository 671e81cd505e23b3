//! `kltsurf` — exact computations on weighted dual graphs from the shell.
//!
//! Scalar subcommands print one bare value (an integer, a `p/q` rational,
//! or `true`/`false`); report subcommands print pretty JSON to stdout and
//! progress to stderr. Exit codes: 0 success, 1 a checked statement is
//! false (a failed `lc-test`, a sweep counterexample), 2 bad input or
//! usage.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use kltsurf::bounds::{ambro_example_t, bound_sheet, grid_check, mu2_lower_bound, BoundSheet};
use kltsurf::graphfile::{parse_str, GraphFile};
use kltsurf::rat::{approx_decimal, format_rat};
use kltsurf::verify::{run_chain_sweep, run_mult_bound_sweep, CaseTag, ChainSpace};
use kltsurf::{discrepancy, parse_rat, CurveAttachment, CyclicQuotient, SubgraphSelector};

/// Writes one line to stdout, exiting quietly if the reader closed the
/// pipe (e.g. `kltsurf sweep --qmax 9 | head`).
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed writing to stdout: {e}");
        }
    }};
}

#[derive(Parser)]
#[command(name = "kltsurf", version, about = "Exact invariants of klt surface singularities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print Δ, the absolute determinant of the intersection matrix.
    ///
    /// Works on any parseable graph (Δ of a disconnected graph is the
    /// product over components; Δ of the empty graph is 1).
    Delta {
        /// Graph file (text or JSON).
        file: PathBuf,
        /// Comma-separated 1-based vertices to delete first.
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
    },
    /// Print the log discrepancy a(E_k), or the boundary discrepancy
    /// a(E_k) - (1-δ)·mult_k if --delta is given (the file's curve is C;
    /// a missing curve means C = 0).
    Discrepancy {
        /// Graph file (text or JSON).
        file: PathBuf,
        /// 1-based exceptional curve index k.
        #[arg(long)]
        vertex: usize,
        /// Boundary coefficient 1-δ as δ = p/q.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Print the pull-back multiplicity mult_{E_k} π*C for the file's curve.
    Mult {
        /// Graph file with a `curve:` line.
        file: PathBuf,
        /// 1-based exceptional curve index k.
        #[arg(long)]
        vertex: usize,
    },
    /// Print whether (Y ∋ 0, (1-δ)C) is δ-log-canonical: `true` (exit 0)
    /// or `false` (exit 1).
    LcTest {
        /// Graph file; the curve defaults to 0 if absent.
        file: PathBuf,
        /// δ = p/q with 0 < δ < 1.
        #[arg(long)]
        delta: String,
    },
    /// Print the continued-fraction chain weights of the cyclic quotient
    /// singularity of type 1/n(1, a), then check Δ(chain) = n.
    Hj {
        /// Order of the cyclic group.
        n: u64,
        /// Weight of the action, coprime to n.
        a: u64,
    },
    /// Check the six chain determinant laws on every chain in a range;
    /// JSON summary to stdout, exit 1 on any counterexample.
    VerifyChainLemma {
        /// Longest chain to enumerate.
        #[arg(long)]
        max_len: usize,
        /// Largest weight to enumerate (weights run over 2..=max-weight).
        #[arg(long)]
        max_weight: i64,
    },
    /// Check the multiplicity floor and determinant cap on every δ-lc
    /// configuration of one case shape; JSON summary to stdout, exit 1 on
    /// a counterexample or if no instance satisfies the hypothesis.
    VerifyMultBound {
        /// Case shape: 1 (curve at both chain ends), 2 (curve at the
        /// middle of `[2,w,2]` or past a two-leaf fork), 3 (curve at one
        /// chain end).
        #[arg(long)]
        case: u32,
        /// Largest vertex count to enumerate.
        #[arg(long)]
        max_n: usize,
        /// Largest weight to enumerate.
        #[arg(long)]
        max_weight: i64,
        /// δ = p/q with 0 < δ < 1/6.
        #[arg(long)]
        delta: String,
    },
    /// Print the bound sheet for one ε (and optionally δ); values are
    /// exact rationals, with ≈-marked decimals in text format.
    Bounds {
        /// ε = p/q with 0 < ε < 1/3.
        #[arg(long)]
        epsilon: String,
        /// δ = p/q with 0 < δ < ε, enables the t₀ entry.
        #[arg(long)]
        delta: Option<String>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the worked log-canonical-threshold example t(q) as JSON,
    /// compared against the local volume floor when q ≥ 4.
    Ambro {
        /// Parameter q ≥ 1 of the example.
        #[arg(long)]
        q: u64,
    },
    /// Re-prove every grid inequality for ε = 1/q, q = 4..=qmax; JSON
    /// report to stdout, exit 1 on any failure.
    Sweep {
        /// Largest q on the grid (at least 4).
        #[arg(long)]
        qmax: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Text,
}

type CliResult = Result<ExitCode, Box<dyn Error>>;

/// Renders the sheet as aligned text: exact value first, then a 6-figure
/// decimal marked `≈` whenever the value is not an integer.
fn print_sheet_text(sheet: &BoundSheet) {
    let mut rows: Vec<(&str, &kltsurf::Rat)> = vec![("epsilon", &sheet.epsilon)];
    if let Some(d) = &sheet.delta {
        rows.push(("delta", d));
    }
    if let Some(t0) = &sheet.t0_lb {
        rows.push(("t0_lb", t0));
    }
    rows.extend([
        ("mu2_lb", &sheet.mu2_lb),
        ("mu2_floor", &sheet.mu2_floor),
        ("M2_ub", &sheet.m2_ub),
        ("dpf_bound", &sheet.dpf_bound),
        ("dpf_tight", &sheet.dpf_tight),
        ("conic_bound", &sheet.conic_bound),
        ("rank1_bound", &sheet.rank1_bound),
        ("volume_bound", &sheet.volume_bound),
    ]);
    for (name, value) in rows {
        if value.is_integer() {
            outln!("{name:<13} {}", format_rat(value));
        } else {
            outln!("{name:<13} {:<12} ≈ {}", format_rat(value), approx_decimal(value));
        }
    }
}

fn read_graph(path: &Path) -> Result<GraphFile, Box<dyn Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

/// Converts a 1-based CLI vertex index to the internal 0-based index.
fn vertex_index(vertex: usize, n: usize) -> Result<usize, Box<dyn Error>> {
    match vertex {
        v if (1..=n).contains(&v) => Ok(v - 1),
        v => Err(format!("vertex {v} out of range 1..={n}").into()),
    }
}

/// The file's curve, or the zero curve when the file has none.
fn curve_or_zero(file: &GraphFile) -> CurveAttachment {
    file.curve
        .clone()
        .unwrap_or_else(|| CurveAttachment::new(vec![0; file.graph.n()]).expect("zero curve"))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Box<dyn Error>> {
    outln!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct AmbroReport {
    q: u64,
    /// The example's log-canonical-threshold value t(q), exact.
    t: String,
    /// Local volume floor at ε = 1/q (only defined for q ≥ 4).
    #[serde(skip_serializing_if = "Option::is_none")]
    mu2_lower_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exceeds_mu2: Option<bool>,
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Delta { file, remove } => {
            let parsed = read_graph(&file)?;
            let n = parsed.graph.n();
            let deleted: Vec<usize> = remove
                .iter()
                .map(|&v| vertex_index(v, n))
                .collect::<Result<_, _>>()?;
            let sel = SubgraphSelector::from_vertices(n, deleted)?;
            outln!("{}", parsed.graph.delta(&sel));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Discrepancy { file, vertex, delta } => {
            let parsed = read_graph(&file)?;
            let k = vertex_index(vertex, parsed.graph.n())?;
            let value = match delta {
                None => discrepancy::log_discrepancy(&parsed.graph, k)?,
                Some(d) => {
                    let delta = parse_rat(&d)?;
                    let curve = curve_or_zero(&parsed);
                    discrepancy::boundary_discrepancy(&parsed.graph, &curve, k, &delta)?
                }
            };
            outln!("{}", format_rat(&value));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Mult { file, vertex } => {
            let parsed = read_graph(&file)?;
            let k = vertex_index(vertex, parsed.graph.n())?;
            let curve = parsed
                .curve
                .as_ref()
                .ok_or_else(|| format!("{}: no `curve:` line in file", file.display()))?;
            let value = discrepancy::mult_pullback(&parsed.graph, curve, k)?;
            outln!("{}", format_rat(&value));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::LcTest { file, delta } => {
            let parsed = read_graph(&file)?;
            let delta = parse_rat(&delta)?;
            let holds = discrepancy::is_delta_lc(&parsed.graph, parsed.curve.as_ref(), &delta)?;
            outln!("{holds}");
            Ok(if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Hj { n, a } => {
            let q = CyclicQuotient::new(n, a)?;
            outln!("{:?}", q.hj_expansion());
            let delta = q.chain_graph().delta_full();
            if delta == n.into() {
                outln!("Δ = {delta} (matches n)");
                Ok(ExitCode::SUCCESS)
            } else {
                outln!("Δ = {delta} (expected {n})");
                Ok(ExitCode::from(1))
            }
        }
        Cmd::VerifyChainLemma {
            max_len,
            max_weight,
        } => {
            let space = ChainSpace::new(max_len, max_weight)?;
            eprintln!(
                "checking {} chains (length <= {max_len}, weights 2..={max_weight})",
                space.count()
            );
            let summary = run_chain_sweep(&space);
            eprintln!(
                "done: {} pass, {} fail, {} vacuous",
                summary.pass, summary.fail, summary.vacuous
            );
            print_json(&summary)?;
            Ok(if summary.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::VerifyMultBound {
            case,
            max_n,
            max_weight,
            delta,
        } => {
            let case = CaseTag::from_number(case)?;
            let delta = parse_rat(&delta)?;
            eprintln!(
                "checking {case:?} configurations (n <= {max_n}, weights 2..={max_weight}, δ = {})",
                format_rat(&delta)
            );
            let summary = run_mult_bound_sweep(case, max_n, max_weight, &delta)?;
            eprintln!(
                "done: {} pass, {} fail, {} vacuous",
                summary.pass, summary.fail, summary.vacuous
            );
            print_json(&summary)?;
            // A sweep that never met its hypothesis proves nothing.
            Ok(if summary.all_pass() && summary.pass > 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Bounds {
            epsilon,
            delta,
            format,
        } => {
            let epsilon = parse_rat(&epsilon)?;
            let delta = delta.map(|d| parse_rat(&d)).transpose()?;
            let sheet = bound_sheet(&epsilon, delta.as_ref())?;
            match format {
                Format::Json => print_json(&sheet)?,
                Format::Text => print_sheet_text(&sheet),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ambro { q } => {
            let t = ambro_example_t(q)?;
            let mu2 = match q {
                q if q >= 4 => {
                    Some(mu2_lower_bound(&kltsurf::rat(1, q as i64))?)
                }
                _ => None,
            };
            let report = AmbroReport {
                q,
                t: format_rat(&t),
                exceeds_mu2: mu2.as_ref().map(|m| &t > m),
                mu2_lower_bound: mu2.as_ref().map(format_rat),
            };
            print_json(&report)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep { qmax } => {
            eprintln!("re-proving grid inequalities for q = 4..={qmax}");
            let report = grid_check(qmax)?;
            print_json(&report)?;
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
