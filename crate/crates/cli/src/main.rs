//! `sqc`: batch front-end for the graph-squares toolkit.
//!
//! Five subcommands — `gen`, `analyze`, `verify`, `extract`, `search` —
//! each emit a deterministic JSON run report on stdout and exit with
//! 0 (pass), 1 (fail), or 2 (usage or input error). `--json-schema`
//! prints the report schema.

mod commands;
mod input;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const RUN_REPORT_SCHEMA: &str = include_str!("../schema/run_report.schema.json");

#[derive(Parser)]
#[command(
    name = "sqc",
    version,
    about = "Constructions, exact analyses, witness extraction, and randomized \
             searches for cliques in graph squares"
)]
struct Cli {
    /// Print the run-report JSON schema and exit.
    #[arg(long = "json-schema")]
    json_schema: bool,

    /// Print only `pass` or `fail` instead of the full report.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a construction and report its asserted identities.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Compute exact measurements of a graph file.
    Analyze {
        #[command(subcommand)]
        metric: AnalyzeMetric,
    },
    /// Verify a structural claim, reporting a counterreason on failure.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Run a witness-extraction pipeline and write the reduced instance.
    Extract {
        #[command(subcommand)]
        variant: ExtractVariant,
    },
    /// Randomized lower-bound search for extremal clique sizes in squares.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Five hubs joined through bundles of middle vertices (even D >= 4).
    Example1 {
        /// Maximum-degree parameter; must be even and at least 4.
        #[arg(long = "D")]
        d: usize,
        /// Write the graph document here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Subdivided circulant whose square restricted to S is (3D-4)-regular.
    Example2 {
        /// Degree of the circulant; at least 2 and below 4s.
        #[arg(long = "D")]
        d: usize,
        /// Quarter of the circulant's vertex count; at least 3.
        #[arg(long)]
        s: usize,
        /// Write the graph document here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Equitable-partition hub family (k-degenerate, k >= 2).
    Example3 {
        /// Degeneracy parameter; at least 2.
        #[arg(long)]
        k: usize,
        /// Maximum-degree parameter; at least k.
        #[arg(long = "D")]
        d: usize,
        /// Ground-set size; defaults to 2kD^2, must be a multiple of kD.
        #[arg(long = "s-size")]
        s_size: Option<usize>,
        /// Write the graph document here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Complete multigraph with uniform edge multiplicity.
    FatClique {
        /// Number of vertices; at least 3.
        #[arg(long)]
        h: usize,
        /// Multiplicity of every edge; at least 1.
        #[arg(long)]
        mult: usize,
        /// Remove two copies of every edge along the cycle 0,1,...,h-1.
        #[arg(long)]
        thin: bool,
        /// Write the graph document here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random k-degenerate graph with maximum degree at most D.
    Random {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Back-degree of the generating order.
        #[arg(long)]
        k: usize,
        /// Maximum-degree cap.
        #[arg(long = "D")]
        d: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the graph document here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AnalyzeMetric {
    /// Exact clique number of the square (branch and bound).
    SquareClique {
        /// Graph file to analyze.
        graph: PathBuf,
        /// Also check this set: a stored set name or a literal {0,1,2}.
        #[arg(long)]
        set: Option<String>,
        /// Wall-clock budget in seconds for the exact search.
        #[arg(long = "budget-s", default_value_t = 60)]
        budget_s: u64,
    },
    /// Exact maximum average degree, as a fraction.
    Mad {
        /// Graph file to analyze.
        graph: PathBuf,
    },
    /// Degeneracy and a witnessing deletion order.
    Degeneracy {
        /// Graph file to analyze.
        graph: PathBuf,
    },
    /// Degeneracy of the square compared against the k-degenerate bounds.
    SquareDegeneracy {
        /// Graph file to analyze.
        graph: PathBuf,
        /// Maximum-degree hypothesis.
        #[arg(long = "D")]
        d: usize,
        /// Degeneracy hypothesis.
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// S is a square clique, independent, and consecutive in some
    /// 2-degeneracy order.
    Nice {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Set to check: a stored set name or a literal {0,1,2}.
        #[arg(long)]
        set: String,
    },
    /// Multigraph edge bound 2|E| <= 5D under the disjointness hypothesis.
    Thm1 {
        /// Multigraph file.
        #[arg(long)]
        graph: PathBuf,
        /// Degree bound D.
        #[arg(long = "D")]
        d: usize,
    },
    /// Per-vertex token-counting inequality audit.
    KeyInequality {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Set to audit: a stored set name or a literal {0,1,2}.
        #[arg(long)]
        set: String,
        /// Degree bound D.
        #[arg(long = "D")]
        d: usize,
        /// Token scheme: 2deg or mad4.
        #[arg(long, default_value = "2deg")]
        variant: String,
    },
}

#[derive(Subcommand)]
enum ExtractVariant {
    /// Pipeline for 2-degenerate inputs; output is always in normal form.
    #[command(name = "2deg")]
    TwoDeg {
        /// Graph file.
        graph: PathBuf,
        /// Square clique to reduce: a stored set name or a literal {0,1,2}.
        #[arg(long)]
        set: String,
        /// Degree bound D.
        #[arg(long = "D")]
        d: usize,
        /// Write the reduced instance here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Pipeline for graphs with maximum average degree below four.
    #[command(name = "mad4")]
    Mad4 {
        /// Graph file.
        graph: PathBuf,
        /// Square clique to reduce: a stored set name or a literal {0,1,2}.
        #[arg(long)]
        set: String,
        /// Degree bound D.
        #[arg(long = "D")]
        d: usize,
        /// Write the reduced instance here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchTarget {
    /// Largest square clique over 2-degenerate graphs with max degree <= D.
    F {
        /// Degree bound D.
        #[arg(long = "D")]
        d: usize,
        /// Number of samples, including the sample-0 construction.
        #[arg(long)]
        samples: usize,
        /// Root RNG seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Smallest sampled vertex count.
        #[arg(long = "n-min", default_value_t = 10)]
        n_min: usize,
        /// Largest sampled vertex count.
        #[arg(long = "n-max", default_value_t = 60)]
        n_max: usize,
    },
    /// Largest square clique over mad-below-four graphs with max degree <= D.
    G {
        /// Degree bound D.
        #[arg(long = "D")]
        d: usize,
        /// Number of samples, including the sample-0 construction.
        #[arg(long)]
        samples: usize,
        /// Root RNG seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Smallest sampled vertex count.
        #[arg(long = "n-min", default_value_t = 10)]
        n_min: usize,
        /// Largest sampled vertex count.
        #[arg(long = "n-max", default_value_t = 60)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.json_schema {
        report::emit(RUN_REPORT_SCHEMA.trim_end());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (try --help)");
        return ExitCode::from(2);
    };
    let started = Instant::now();
    let outcome = match &command {
        Command::Gen { kind } => commands::gen::run(kind, started),
        Command::Analyze { metric } => commands::analyze::run(metric, started),
        Command::Verify { check } => commands::verify::run(check, started),
        Command::Extract { variant } => commands::extract::run(variant, started),
        Command::Search { target } => commands::search::run(target, started),
    };
    match outcome {
        Ok(report) => {
            report.print(cli.quiet);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
