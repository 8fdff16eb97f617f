//! `polydep`: dependence and independence queries on polytree-shaped
//! Bayesian networks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polydep_cli::app::{self, CliError, CommandOutput};

/// Read dependencies, not just independencies, from polytree-shaped
/// Bayesian networks.
#[derive(Parser)]
#[command(name = "polydep", version, about)]
struct Cli {
    /// Emit a structured JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a query (`sep X ; Y | Z`, `dep X ; Y | Z`, or
    /// `closure X ; Y | Z` for closure membership) and report HOLDS or
    /// DOES-NOT-HOLD.
    Check {
        /// Graph file.
        graph: PathBuf,
        /// Query, e.g. "dep A ; B | C,D".
        query: String,
        /// Require the graph to be a polytree even for sep queries.
        #[arg(long)]
        polytree: bool,
    },
    /// Print every dependence in the rule closure of the dependence base,
    /// one statement per line.
    Closure {
        /// Graph file (polytree, at most 12 nodes).
        graph: PathBuf,
    },
    /// Derive a certified dependence from the dependence base and print the
    /// numbered trace.
    Derive {
        /// Graph file (polytree).
        graph: PathBuf,
        /// Query, e.g. "dep A ; B | D".
        query: String,
    },
    /// Re-check a trace produced by `derive` (text or JSON form).
    Verify {
        /// Graph file (polytree).
        graph: PathBuf,
        /// Trace file.
        trace: PathBuf,
    },
    /// Generate a seeded random polytree as a graph file.
    Gen {
        /// Number of nodes.
        #[arg(long)]
        nodes: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fit seeded random linear-Gaussian models on the graph and compare
    /// partial correlations against the graphical verdicts.
    GaussianValidate {
        /// Graph file (polytree, at most 12 nodes).
        graph: PathBuf,
        /// Number of random models.
        #[arg(long, default_value_t = 20)]
        models: usize,
        /// RNG seed of the first model.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Separated triples must stay below this magnitude.
        #[arg(long, default_value_t = 1e-9)]
        zero_tol: f64,
        /// Certified-dependent triples must stay above this magnitude.
        #[arg(long, default_value_t = 1e-7)]
        dep_tol: f64,
    },
    /// Run the closure-equivalence self test on seeded random polytrees.
    Selftest {
        /// Number of graphs (sizes cycle through 3, 4, 5 nodes).
        #[arg(long, default_value_t = 300)]
        graphs: usize,
        /// Base RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<CommandOutput, String> {
    let map_cli = |e: CliError| e.to_string();
    match cli.command {
        Command::Check {
            graph,
            query,
            polytree,
        } => {
            let text = read(&graph)?;
            app::check(&graph.display().to_string(), &text, &query, polytree, cli.json)
                .map_err(map_cli)
        }
        Command::Closure { graph } => {
            let text = read(&graph)?;
            app::closure(&graph.display().to_string(), &text, cli.json).map_err(map_cli)
        }
        Command::Derive { graph, query } => {
            let text = read(&graph)?;
            app::derive_cmd(&graph.display().to_string(), &text, &query, cli.json)
                .map_err(map_cli)
        }
        Command::Verify { graph, trace } => {
            let graph_text = read(&graph)?;
            let trace_text = read(&trace)?;
            app::verify_cmd(
                &graph.display().to_string(),
                &graph_text,
                &trace_text,
                cli.json,
            )
            .map_err(map_cli)
        }
        Command::Gen { nodes, seed } => app::gen(nodes, seed, cli.json).map_err(map_cli),
        Command::GaussianValidate {
            graph,
            models,
            seed,
            zero_tol,
            dep_tol,
        } => {
            let text = read(&graph)?;
            app::gaussian_validate(
                &graph.display().to_string(),
                &text,
                models,
                seed,
                zero_tol,
                dep_tol,
                cli.json,
            )
            .map_err(map_cli)
        }
        Command::Selftest { graphs, seed } => {
            app::selftest(graphs, seed, cli.json).map_err(map_cli)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
