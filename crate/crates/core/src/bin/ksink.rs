//! Command-line frontend for the sink-placement solvers.
//!
//! Documents go to standard output (or `--output`); diagnostics, warnings
//! and wall-clock timings go to standard error, keeping the document bytes
//! deterministic. Exit status is 0 exactly when a solution document or
//! verification report was produced; infeasible results are successful
//! computations.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ksink_core::cli::{
    run_evaluate, run_exact, run_gen_hs, run_solve, run_verify_hs, to_canonical_json,
};
use ksink_core::Epsilon;

#[derive(Parser)]
#[command(
    name = "ksink",
    about = "Sink placement on dynamic networks: approximate and exact evacuation solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate solve over the epsilon-sampled candidate positions.
    Solve {
        /// Instance document (JSON).
        instance: PathBuf,
        /// Approximation parameter as an exact rational: "1/4", "0.25" or "2".
        #[arg(long)]
        epsilon: String,
        /// Worker threads for subset evaluation; the output is identical
        /// for every value.
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        /// Solve for this k instead of the instance's.
        #[arg(long)]
        k_override: Option<u64>,
        /// Write the solution document here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an explicit sink set (vertex names or `e<i>:<offset>` tokens).
    Evaluate {
        instance: PathBuf,
        /// Sink tokens, e.g. "v3" or "e1:2".
        #[arg(required = true)]
        sinks: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact solve by exhaustive enumeration of all integer positions.
    Exact {
        instance: PathBuf,
        /// Maximum number of sink-set evaluations before refusing.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        k_override: Option<u64>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a sink-placement instance from a hitting-set document.
    GenHs {
        hitting_set: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the hitting-set reduction equivalence on one document.
    VerifyHs {
        hitting_set: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            instance,
            epsilon,
            parallelism,
            k_override,
            output,
        } => {
            let epsilon = Epsilon::parse(&epsilon).map_err(|e| e.to_string())?;
            let text = read(&instance)?;
            let started = Instant::now();
            let (document, warnings) =
                run_solve(&text, epsilon, k_override, parallelism).map_err(|e| e.to_string())?;
            for warning in warnings {
                eprintln!("warning: {warning}");
            }
            eprintln!("solve finished in {} ms", started.elapsed().as_millis());
            emit(&to_canonical_json(&document), output.as_ref())
        }
        Command::Evaluate {
            instance,
            sinks,
            output,
        } => {
            let text = read(&instance)?;
            let document = run_evaluate(&text, &sinks).map_err(|e| e.to_string())?;
            emit(&to_canonical_json(&document), output.as_ref())
        }
        Command::Exact {
            instance,
            budget,
            k_override,
            parallelism,
            output,
        } => {
            let text = read(&instance)?;
            let started = Instant::now();
            let (document, warnings) =
                run_exact(&text, budget, k_override, parallelism).map_err(|e| e.to_string())?;
            for warning in warnings {
                eprintln!("warning: {warning}");
            }
            eprintln!("exact solve finished in {} ms", started.elapsed().as_millis());
            emit(&to_canonical_json(&document), output.as_ref())
        }
        Command::GenHs {
            hitting_set,
            output,
        } => {
            let text = read(&hitting_set)?;
            let document = run_gen_hs(&text).map_err(|e| e.to_string())?;
            emit(&to_canonical_json(&document), output.as_ref())
        }
        Command::VerifyHs {
            hitting_set,
            budget,
        } => {
            let text = read(&hitting_set)?;
            let report = run_verify_hs(&text, budget).map_err(|e| e.to_string())?;
            println!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
