//! `rgood`: command-line access to every operation of the `rgood` library.
//!
//! Every report is a JSON object carrying `"schema": "v1"`, the command
//! name, the seed and a `method` tag: `exhaustive` for exact answers,
//! `heuristic` when a miss proves nothing, `sampled` for estimates. Exit
//! status: 0 on success, 1 when a replay finds a mismatch, 2 for bad input
//! or failed preconditions, 3 when a scale guard refuses the job, 64 for
//! usage errors.

mod commands;
mod literal;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use rgood::graph::{encode_graph6, to_dot};
use rgood::{Error, Graph};

pub const SCHEMA: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    G6,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "rgood",
    version,
    about = "Ramsey goodness toolkit for degenerate graphs"
)]
pub struct Cli {
    /// Seed for every random choice; RG_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Effort limit for exhaustive searches (separators, tuples).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph from a literal.
    Generate {
        #[arg(long)]
        graph: String,
    },
    /// Degeneracy order, greedy coloring and the high-degree count.
    Degeneracy {
        #[arg(long)]
        graph: String,
    },
    /// Count r-cliques.
    Cliques {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        r: usize,
    },
    /// Largest p-joint.
    Joint {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        p: usize,
    },
    /// Largest book of p-cliques.
    Book {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        p: usize,
    },
    /// Find a complete multipartite subgraph with the given part sizes.
    Multipartite {
        #[arg(long)]
        graph: String,
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
    },
    /// Check k_{r+1} against the minimum-degree clique bound.
    CliqueBound {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Find a (gamma, eta) separator certificate.
    Split {
        #[arg(long, conflicts_with = "family")]
        graph: Option<String>,
        /// tree, path, cycle, complete, grid, subdivided-complete
        #[arg(long, requires = "n")]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        eta: f64,
    },
    /// Validate a separator as a certificate.
    CheckSplit {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "")]
        separator: String,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        eta: f64,
    },
    /// Recursive centroid splitting of a tree.
    TreeSplit {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// Close a separator under "at least 2q+1 neighbors inside".
    Trim {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "")]
        s0: String,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
    },
    /// Carry a certificate through a graph operation.
    Transfer {
        #[arg(long, value_enum)]
        kind: commands::TransferKind,
        #[arg(long)]
        graph: String,
        /// Second factor for products.
        #[arg(long)]
        graph2: Option<String>,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        eta: f64,
        /// Power exponent.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Blow-up part sizes, one per vertex.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Number of apex vertices for joins.
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Splittability across a range of orders in one family.
    Probe {
        #[arg(long)]
        family: String,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long, value_delimiter = ',')]
        n_values: Vec<usize>,
    },
    /// Embed a pattern into a host.
    Embed {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        /// Use the separator-and-zones driver instead of the plain greedy.
        #[arg(long)]
        splittable: bool,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        gamma: f64,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        /// Host vertices reserved for the separator (default: its size).
        #[arg(long)]
        core: Option<usize>,
        #[arg(long, default_value_t = 1)]
        zones: usize,
        /// Zone slack; defaults to (6q+1)·⌈√eps_zone·|zone|⌉.
        #[arg(long)]
        margin: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        eps_zone: f64,
    },
    /// Dependent random choice between two vertex sets.
    Drc {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        u1: String,
        #[arg(long)]
        u2: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
    /// High-degree core of a dense graph.
    DenseCore {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        tau: f64,
    },
    /// Decide whether K_N forces red H1 or blue H2.
    Arrow {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
    },
    /// Smallest N with K_N → (H1, H2).
    Ramsey {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// The pentagon blow-up coloring of K_{2n-1}.
    Pentagon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        check_triangle_free: bool,
        /// Also compute q(n).
        #[arg(long)]
        q: bool,
        /// Estimate q(n) from this many random subsets instead.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Spectral test against 3-goodness.
    Refute {
        #[arg(long)]
        graph: String,
    },
    /// Second singular value of the adjacency matrix.
    Sigma2 {
        #[arg(long)]
        graph: String,
    },
    /// Expander mixing inequality over vertex-set pairs.
    Mixing {
        #[arg(long)]
        graph: String,
        /// Sample this many pairs instead of enumerating all of them.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Largest |X||Y| with no edges between X and Y.
    Hole {
        #[arg(long)]
        graph: String,
    },
    /// Re-run recorded invocations and compare their reports.
    Replay { file: PathBuf },
}

/// What a command produced, before formatting.
pub enum Output {
    Report { method: &'static str, body: Value },
    Graph(Graph),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ScaleGuard(_) => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::VertexOutOfRange { .. } => "vertex_out_of_range",
        Error::SelfLoop(_) => "self_loop",
        Error::InvalidParams(_) => "invalid_params",
        Error::Infeasible(_) => "infeasible",
        Error::Precondition(_) => "precondition",
        Error::ScaleGuard(_) => "scale_guard",
        Error::Parse { .. } => "parse",
    }
}

fn command_name(c: &Command) -> String {
    let dbg = format!("{c:?}");
    let head = dbg.split([' ', '{', '(']).next().unwrap_or_default();
    let mut out = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_ascii_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

/// Report as a JSON object with the envelope fields first.
pub fn envelope(cli: &Cli, seed: u64, out: Output) -> Value {
    let (method, body) = match out {
        Output::Report { method, body } => (method, body),
        Output::Graph(g) => ("exhaustive", commands::graph_summary(&g)),
    };
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command_name(&cli.command).into());
    map.insert("method".into(), method.into());
    map.insert("seed".into(), seed.into());
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

fn render(cli: &Cli, seed: u64, out: Output) -> Result<String, Error> {
    match (cli.format, out) {
        (Format::Json, out) => Ok(serde_json::to_string_pretty(&envelope(cli, seed, out))
            .expect("reports serialize")
            + "\n"),
        (Format::G6, Output::Graph(g)) => {
            Ok(String::from_utf8_lossy(&encode_graph6(&g)).into_owned() + "\n")
        }
        (Format::Dot, Output::Graph(g)) => Ok(to_dot(&g)),
        _ => Err(Error::InvalidParams(
            "--format g6/dot only applies to `generate`".into(),
        )),
    }
}

fn resolve_seed(cli: &Cli) -> Result<u64, Error> {
    match std::env::var("RG_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| {
            Error::InvalidParams(format!(
                "RG_SEED must be an unsigned 64-bit integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(cli.seed),
    }
}

fn fail(e: &Error) -> ExitCode {
    let report = serde_json::json!({
        "schema": SCHEMA,
        "error": error_kind(e),
        "message": e.to_string(),
    });
    eprintln!("{report}");
    ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(64),
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            return fail(&Error::InvalidParams(format!(
                "cannot start {t} threads: {e}"
            )));
        }
    }
    let seed = match resolve_seed(&cli) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let (text, status) = match &cli.command {
        Command::Replay { file } => match commands::replay(file, seed) {
            Ok((body, all_passed)) => {
                let out = Output::Report {
                    method: "exhaustive",
                    body,
                };
                match render(&cli, seed, out) {
                    Ok(t) => (
                        t,
                        if all_passed {
                            ExitCode::SUCCESS
                        } else {
                            ExitCode::from(1)
                        },
                    ),
                    Err(e) => return fail(&e),
                }
            }
            Err(e) => return fail(&e),
        },
        cmd => match commands::run(cmd, seed, cli.budget).and_then(|out| render(&cli, seed, out)) {
            Ok(t) => (t, ExitCode::SUCCESS),
            Err(e) => return fail(&e),
        },
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    status
}
