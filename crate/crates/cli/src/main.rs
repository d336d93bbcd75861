//! `cakenet`: run the networked cake-cutting protocols and their checkers on
//! JSON instance files.
//!
//! Exit codes: 0 success (and fair), 2 fairness violated, 1 error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, CriterionArg, GraphArg, Output, Protocol};

#[derive(Parser)]
#[command(
    name = "cakenet",
    version,
    about = "Exact fair cake cutting on networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a protocol and write the allocation.
    Solve {
        #[arg(long, value_enum)]
        protocol: Protocol,
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an allocation against a fairness criterion on a graph.
    Verify {
        #[arg(long, value_enum)]
        criterion: CriterionArg,
        #[arg(long, value_enum)]
        graph: GraphArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        alloc: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance from a seed.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        segments: usize,
        /// Only attach new vertices above this depth.
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print depths, subtree sizes, f values and cut bounds of an instance.
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn run(cmd: Command) -> Result<bool, CliError> {
    let (output, out): (Output, Option<PathBuf>) = match cmd {
        Command::Solve {
            protocol,
            input,
            out,
        } => (commands::solve(protocol, &input)?, out),
        Command::Verify {
            criterion,
            graph,
            input,
            alloc,
            out,
        } => (commands::verify(criterion, graph, &input, &alloc)?, out),
        Command::Gen {
            n,
            seed,
            segments,
            max_depth,
            out,
        } => (commands::gen(n, seed, segments, max_depth)?, out),
        Command::Info { input } => (commands::info(&input)?, None),
    };
    commands::write_or_print(out.as_deref(), &output.json)?;
    Ok(output.violated)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
