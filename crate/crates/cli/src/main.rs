//! `chordal`: clique trees, minimal separators and Shearer laws of chordal
//! graphs from the command line.

mod graph_cmds;
mod report;
mod shearer_cmds;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chordal::{parse_graph, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use report::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "chordal", version, about = "Clique trees and Shearer laws of chordal graphs")]
struct Cli {
    /// Edge-list file; stdin if omitted.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Def,
    Cip,
    Rip,
    Maxw,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Numeric {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Chordality test with a perfect elimination ordering or a chordless cycle.
    CheckChordal,
    /// Maximal cliques.
    Cliques,
    /// Clique graph with intersection labels.
    CliqueGraph,
    /// Clique families with maximal generators and R/S/B sizes.
    Families,
    /// Per-family edge partition, R-classes and the multigraph B.
    Partition,
    /// Number of clique trees.
    CountTrees,
    /// Stream clique trees.
    EnumTrees {
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check clique trees read from a JSON file.
    ValidateTree {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, value_enum, default_value_t = Criterion::All)]
        criterion: Criterion,
    },
    /// Minimal separators.
    Separators {
        /// Also run the brute-force search and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Clique-graph edges labelled by a minimal separator.
    ReducedGraph,
    #[command(subcommand)]
    Shearer(ShearerCommand),
}

#[derive(Args)]
pub struct OrderArgs {
    /// Root clique of the clique tree inducing the vertex order.
    #[arg(long, default_value_t = 0)]
    pub order_root: usize,
    #[arg(long, value_enum, default_value_t = Numeric::Exact)]
    pub numeric: Numeric,
}

#[derive(Subcommand)]
pub enum ShearerCommand {
    /// Strict interior, boundary or outside of the Shearer region.
    Region {
        #[arg(long)]
        prob: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Coupling vector with the equal correspondence to the marginals.
    CFromP {
        #[arg(long)]
        prob: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Marginals of a coupling vector.
    PFromC {
        #[arg(long)]
        coupling: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Draws from the block factor (floating point).
    Sample {
        #[arg(long)]
        coupling: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Exact joint law of the block factor.
    ExactLaw {
        #[arg(long)]
        coupling: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Check that the block factor is Shearer's law for the marginals.
    Verify {
        #[arg(long)]
        prob: PathBuf,
        /// Defaults to the coupling solved from the marginals.
        #[arg(long)]
        coupling: Option<PathBuf>,
        /// Absolute tolerance; 0 in exact mode, 1e-12 in float mode.
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        order: OrderArgs,
    },
}

impl ShearerCommand {
    pub fn order_args(&self) -> &OrderArgs {
        match self {
            ShearerCommand::Region { order, .. }
            | ShearerCommand::CFromP { order, .. }
            | ShearerCommand::PFromC { order, .. }
            | ShearerCommand::Sample { order, .. }
            | ShearerCommand::ExactLaw { order, .. }
            | ShearerCommand::Verify { order, .. } => order,
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_graph(input: Option<&Path>) -> Result<Graph, Failure> {
    let text = match input {
        Some(p) => read_file(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            s
        }
    };
    let parsed = parse_graph(&text).map_err(|e| Failure::from_error(e, None))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w:?}");
    }
    Ok(parsed.graph)
}

fn run(cli: &Cli) -> Outcome {
    let g = read_graph(cli.input.as_deref())?;
    match &cli.command {
        Command::CheckChordal => graph_cmds::check_chordal(&g),
        Command::Cliques => graph_cmds::cliques(&g),
        Command::CliqueGraph => graph_cmds::clique_graph(&g),
        Command::Families => graph_cmds::families(&g),
        Command::Partition => graph_cmds::partition(&g),
        Command::CountTrees => graph_cmds::count_trees(&g),
        Command::EnumTrees { limit } => graph_cmds::enum_trees(&g, *limit),
        Command::ValidateTree { tree, criterion } => graph_cmds::validate_tree(&g, &read_file(tree)?, *criterion),
        Command::Separators { oracle } => graph_cmds::separators(&g, *oracle),
        Command::ReducedGraph => graph_cmds::reduced_graph(&g),
        Command::Shearer(cmd) => shearer_cmds::run(&g, cmd, &read_file),
    }
}

fn with_version(mut doc: Value) -> Value {
    if let Value::Object(map) = &mut doc {
        map.insert("version".into(), Value::String(chordal::VERSION.into()));
    }
    doc
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    let mut out = std::io::stdout().lock();
    let code = match run(&cli) {
        Ok(report) => {
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&with_version(report.json)).unwrap());
            } else {
                let _ = out.write_all(report.human.as_bytes());
            }
            report.code
        }
        Err(failure) => {
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&with_version(failure.json())).unwrap());
            }
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    ExitCode::from(code)
}
