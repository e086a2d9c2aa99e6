//! `mdim`: build graphs, check sets, compute minimum resolving, doubly
//! resolving and strong resolving sets, and verify the published claims.
//!
//! Exit codes: 0 success, 1 a claim failed or a checked set lacks the
//! property, 2 usage error, 3 search budget exceeded.

mod setlit;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mdim_core::claims::{emit_table, verify_claims, ClaimReport, Params, Verdict, VerifyOptions};
use mdim_core::families::{Built, FamilySpec};
use mdim_core::kernel::{representation, violation};
use mdim_core::solve::DEFAULT_BUDGET;
use mdim_core::{all_pairs_distances, solve, write_edge_list, Kind, Method, SearchMode, SolveError, SolveOptions};
use serde::Serialize;

const GRAPH_HELP: &str = "Graph: cycle:n=N, path:k=K, cp:n=N,k=K, cpm:n=N,k=K,m=M, h:n=N, l:n=N or file:PATH";

#[derive(Parser)]
#[command(name = "mdim", version, about = "Exact metric, doubly resolving and strong metric dimensions")]
struct Cli {
    /// Output format; defaults to json for check, solve and claims and to
    /// human for build and table.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Leave elapsed times out of the output.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as an edge list.
    Build {
        #[arg(long, help = GRAPH_HELP)]
        graph: FamilySpec,
        /// Output file, or - for standard output.
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Test whether a set has a property.
    #[command(after_help = setlit::GRAMMAR)]
    Check {
        #[arg(long, help = GRAPH_HELP)]
        graph: FamilySpec,
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
    },
    /// Compute a minimum set of the given kind.
    Solve {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, help = GRAPH_HELP)]
        graph: FamilySpec,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Verify the published claims.
    Claims {
        /// Every claim in the registry.
        #[arg(long, conflicts_with = "id", required_unless_present = "id")]
        all: bool,
        /// Claim id such as Thm3.7; also selects its sub-claims (Thm3.7-P).
        #[arg(long)]
        id: Vec<String>,
        /// Override the parameters of the first instance, e.g. n=9 or n=5,k=4.
        #[arg(long, value_parser = parse_params)]
        params: Option<Params>,
        /// Also run the larger instances.
        #[arg(long)]
        slow: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the representation of every vertex with respect to a set.
    #[command(after_help = setlit::GRAMMAR)]
    Table {
        #[arg(long, help = GRAPH_HELP)]
        graph: FamilySpec,
        #[arg(long)]
        set: String,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Candidate evaluations allowed per search.
    #[arg(long, env = "MDIM_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long, value_enum, default_value_t = Mode::Pruned)]
    mode: Mode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pruned,
    Exhaustive,
}

impl SearchArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            budget: self.budget,
            jobs: self.jobs as usize,
            mode: match self.mode {
                Mode::Pruned => SearchMode::Pruned,
                Mode::Exhaustive => SearchMode::Exhaustive,
            },
        }
    }
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

fn parse_params(s: &str) -> Result<Params, String> {
    let mut out = Params::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let value = value.parse().map_err(|_| format!("{key}: {value:?} is not a count"))?;
        if out.insert(key.trim().to_string(), value).is_some() {
            return Err(format!("{key} given twice"));
        }
    }
    Ok(out)
}

enum Failure {
    /// The command ran; the answer was negative.
    Negative,
    Usage(String),
    Budget,
    Io(String),
}

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::from(OK),
        Err(Failure::Negative) => ExitCode::from(NEGATIVE),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Budget) => ExitCode::from(BUDGET),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(NEGATIVE)
        }
    }
}

fn build(spec: &FamilySpec) -> Result<Built, Failure> {
    spec.build().map_err(|e| Failure::Usage(format!("--graph {spec}: {e}")))
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))
}

#[derive(Serialize)]
struct SolveReport<'a> {
    kind: Kind,
    size: usize,
    witness: &'a [&'a str],
    certificate_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
    nodes_explored: u64,
    method: Method,
}

#[derive(Serialize)]
struct BudgetReport<'a> {
    kind: Kind,
    error: &'static str,
    budget: u64,
    lower_bound: usize,
    upper_bound: usize,
    best_known: &'a [&'a str],
}

#[derive(Serialize)]
struct PairJson<'a> {
    u: &'a str,
    v: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<String>,
}

#[derive(Serialize)]
struct CheckReport<'a> {
    graph: String,
    set: &'a [&'a str],
    kind: Kind,
    holds: bool,
    violation: Option<PairJson<'a>>,
}

#[derive(Serialize)]
struct GraphReport<'a> {
    graph: String,
    vertices: usize,
    edges: &'a [(usize, usize)],
    labels: &'a [String],
}

#[derive(Serialize)]
struct TableReport<'a> {
    graph: String,
    set: &'a str,
    rows: Vec<&'a str>,
}

fn json_line(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("report types serialize") + "\n"
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let timing = !cli.no_timing;
    match &cli.command {
        Command::Build { graph, out } => {
            let built = build(graph)?;
            let g = built.graph();
            let text = match cli.format.unwrap_or(Format::Human) {
                Format::Human => write_edge_list(g) + "\n",
                Format::Json => json_line(&GraphReport {
                    graph: graph.to_string(),
                    vertices: g.n_vertices(),
                    edges: g.edges(),
                    labels: g.labels(),
                }),
            };
            if out.as_os_str() == "-" {
                emit(&text)
            } else {
                std::fs::write(out, text).map_err(|e| Failure::Io(format!("--out {}: {e}", out.display())))
            }
        }
        Command::Check { graph, set, kind } => {
            let built = build(graph)?;
            let g = built.graph();
            let q = setlit::parse_set(set, &built).map_err(|e| Failure::Usage(format!("--set {set}: {e}")))?;
            let d = all_pairs_distances(g).map_err(|e| Failure::Usage(format!("--graph {graph}: {e}")))?;
            let bad = violation(*kind, &q, &d).map_err(|e| Failure::Usage(format!("--set {set}: {e}")))?;
            let labels = q.labels(g);
            let pair = bad.map(|b| {
                let shared = (*kind == Kind::Resolving).then(|| representation(b.u, &q, &d).unwrap().to_string());
                (g.label(b.u), g.label(b.v), b.lambda, shared)
            });
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let violation = pair.as_ref().map(|(u, v, lambda, shared)| PairJson {
                        u,
                        v,
                        lambda: *lambda,
                        representation: shared.clone(),
                    });
                    emit(&json_line(&CheckReport {
                        graph: graph.to_string(),
                        set: &labels,
                        kind: *kind,
                        holds: pair.is_none(),
                        violation,
                    }))?;
                }
                Format::Human => {
                    let set = format!("{{{}}}", labels.join(", "));
                    let text = match &pair {
                        None => format!("{set} is {} on {graph}\n", kind_phrase(*kind)),
                        Some((u, v, lambda, shared)) => {
                            let why = match (lambda, shared) {
                                (Some(l), _) => format!("r({u}) - r({v}) = {l}·I"),
                                (_, Some(r)) => format!("r({u}) = r({v}) = {r}"),
                                _ => format!("no vertex of the set strongly resolves {u}, {v}"),
                            };
                            format!("{set} is not {} on {graph}: {why}\n", kind_phrase(*kind))
                        }
                    };
                    emit(&text)?;
                }
            }
            if pair.is_some() {
                Err(Failure::Negative)
            } else {
                Ok(())
            }
        }
        Command::Solve { kind, graph, search } => {
            let built = build(graph)?;
            let g = built.graph();
            let start = Instant::now();
            let result = solve(g, *kind, &search.options());
            let elapsed = start.elapsed().as_millis() as u64;
            let format = cli.format.unwrap_or(Format::Json);
            match result {
                Ok(r) => {
                    let witness = r.witness.labels(g);
                    match format {
                        Format::Json => emit(&json_line(&SolveReport {
                            kind: r.kind,
                            size: r.size,
                            witness: &witness,
                            certificate_checked: r.certificate_checked,
                            elapsed_ms: timing.then_some(elapsed),
                            nodes_explored: r.nodes_explored,
                            method: r.method,
                        })),
                        Format::Human => {
                            let time = if timing { format!(", {elapsed} ms") } else { String::new() };
                            emit(&format!(
                                "{}({graph}) = {}\nwitness: {{{}}}\nmethod: {}, certificate {}, {} nodes{time}\n",
                                symbol(*kind),
                                r.size,
                                witness.join(", "),
                                r.method,
                                if r.certificate_checked { "checked" } else { "not checked" },
                                r.nodes_explored,
                            ))
                        }
                    }
                }
                Err(SolveError::BudgetExceeded { kind, budget, lower_bound, upper_bound }) => {
                    let best = upper_bound.labels(g);
                    match format {
                        Format::Json => emit(&json_line(&BudgetReport {
                            kind,
                            error: "budget-exceeded",
                            budget,
                            lower_bound,
                            upper_bound: best.len(),
                            best_known: &best,
                        }))?,
                        Format::Human => emit(&format!(
                            "{}({graph}): budget of {budget} nodes exceeded; {lower_bound} <= value <= {}\n",
                            symbol(kind),
                            best.len()
                        ))?,
                    }
                    eprintln!("error: search budget of {budget} nodes exceeded (raise --budget or MDIM_BUDGET)");
                    Err(Failure::Budget)
                }
                Err(e) => Err(Failure::Usage(format!("--graph {graph}: {e}"))),
            }
        }
        Command::Claims { all: _, id, params, slow, search } => {
            let opts =
                VerifyOptions { ids: id.clone(), params: params.clone(), slow: *slow, timing, solve: search.options() };
            let reports = verify_claims(&opts).map_err(|e| Failure::Usage(e.to_string()))?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let text: String = reports.iter().map(json_line).collect();
                    emit(&text)?;
                    eprint!("{}", summary_table(&reports, timing));
                }
                Format::Human => emit(&summary_table(&reports, timing))?,
            }
            if reports.iter().any(|r| r.verdict == Verdict::Fail) {
                Err(Failure::Negative)
            } else if reports.iter().any(|r| r.verdict == Verdict::Skipped) {
                Err(Failure::Budget)
            } else {
                Ok(())
            }
        }
        Command::Table { graph, set } => {
            let built = build(graph)?;
            // named sets print under their own name; literals need a plain list
            let text = match emit_table(&built, set) {
                Ok(text) => text,
                Err(_) => {
                    let q = setlit::parse_set(set, &built).map_err(|e| Failure::Usage(format!("--set {set}: {e}")))?;
                    literal_table(&built, &q)?
                }
            };
            match cli.format.unwrap_or(Format::Human) {
                Format::Human => emit(&text),
                Format::Json => {
                    let rows: Vec<&str> = text.lines().collect();
                    emit(&json_line(&TableReport { graph: graph.to_string(), set, rows }))
                }
            }
        }
    }
}

fn literal_table(built: &Built, q: &mdim_core::VertexSet) -> Result<String, Failure> {
    let g = built.graph();
    let d = all_pairs_distances(g).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut order: Vec<usize> = (0..g.n_vertices()).collect();
    if let Built::Layered(p) = built {
        order.sort_by_key(|&v| {
            let c = p.coord(v);
            (c.index_in_copy(p.n), c.copy)
        });
    }
    let name = format!("{{{}}}", q.labels(g).join(","));
    Ok(order
        .into_iter()
        .map(|v| format!("r({}|{name}) = {}\n", g.label(v), representation(v, q, &d).unwrap()))
        .collect())
}

fn symbol(kind: Kind) -> &'static str {
    match kind {
        Kind::Resolving => "beta",
        Kind::Doubly => "psi",
        Kind::Strong => "sdim",
    }
}

fn kind_phrase(kind: Kind) -> &'static str {
    match kind {
        Kind::Resolving => "resolving",
        Kind::Doubly => "doubly resolving",
        Kind::Strong => "strong resolving",
    }
}

fn summary_table(reports: &[ClaimReport], timing: bool) -> String {
    let params = |r: &ClaimReport| r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
    let w_id = reports.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let w_p = reports.iter().map(|r| params(r).len()).max().unwrap_or(6).max(6);
    let w_e = reports.iter().map(|r| r.expected.len()).max().unwrap_or(8).clamp(8, 40);
    let mut out = format!("{:<7} {:<w_id$} {:<w_p$} {:<w_e$} computed\n", "verdict", "id", "params", "expected");
    for r in reports {
        let time = match (timing, r.elapsed_ms) {
            (true, Some(ms)) => format!(" [{ms} ms]"),
            _ => String::new(),
        };
        out.push_str(&format!(
            "{:<7} {:<w_id$} {:<w_p$} {:<w_e$} {}{time}\n",
            r.verdict.to_string(),
            r.id,
            params(r),
            r.expected,
            r.computed
        ));
        if r.verdict != Verdict::Pass {
            if let Some(v) = &r.violation {
                let extra = match (&v.lambda, &v.representation) {
                    (Some(l), _) => format!(" (lambda {l})"),
                    (_, Some(rep)) => format!(" at {rep}"),
                    _ => String::new(),
                };
                out.push_str(&format!("        pair {}, {}{extra}\n", v.u, v.v));
            }
            for d in &r.details {
                out.push_str(&format!("        {d}\n"));
            }
            if let Some(note) = &r.note {
                out.push_str(&format!("        note: {note}\n"));
            }
        }
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    out.push_str(&format!(
        "{} checks: {} passed, {} failed, {} skipped\n",
        reports.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Skipped)
    ));
    out
}
