//! Batch front end: load documents, apply functors, compute homology,
//! solve lifting squares, run verification suites, and emit
//! machine-readable reports with deterministic bytes.
//!
//! Exit status: 0 when the command ran and every assertion passed, 1
//! when it ran but an assertion failed (a failed suite check, a square
//! with no lift, a counterexample that does not reproduce), 2 for usage
//! and load errors.

use clap::{Parser, Subcommand};
use homalg_cli::commands::{self, Functor, Outcome};
use homalg_cli::schema::{self, Document};
use homalg_cli::{CliError, Result};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "homalg",
    version,
    about = "Exact homological algebra over Q and GF(p): documents, functors, lifting, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology dimensions of a complex-like document.
    Homology {
        /// Input document.
        input: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a functor to one or two documents.
    Apply {
        /// Which functor to apply.
        functor: Functor,
        /// Input document(s); pair functors take two.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Word-length cap for the levelwise tensor coalgebra.
        #[arg(long)]
        cap: Option<usize>,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a lifting square document.
    Lift {
        /// Input square document.
        input: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite.
    Verify {
        /// Suite name (see the library's suite list).
        suite: String,
        /// Coefficient field: Q or GFp:<p>.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Truncation degree for the suite's samples.
        #[arg(long = "D")]
        truncation: Option<usize>,
        /// Seed for the suite's random sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random trials.
        #[arg(long)]
        trials: Option<usize>,
        /// Word-length cap for levelwise tensor coalgebras.
        #[arg(long)]
        cap: Option<usize>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the interchange counterexample on the circle carrier.
    Counterexample {
        /// Coefficient field: Q or GFp:<p>.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Truncation degree for the carrier.
        #[arg(long = "D", default_value_t = 3)]
        truncation: usize,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    schema::load_document(&text)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn emit(outcome: &Outcome, out: Option<&Path>) -> Result<()> {
    let text = schema::to_canonical_string(&outcome.report);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let (outcome, out) = match cli.command {
        Command::Homology { input, out } => (commands::homology(&load(&input)?)?, out),
        Command::Apply { functor, inputs, cap, out } => {
            let docs = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
            (commands::apply(functor, &docs, cap)?, out)
        }
        Command::Lift { input, out } => (commands::lift(&load(&input)?)?, out),
        Command::Verify { suite, field, truncation, seed, trials, cap, out } => {
            let params = homalg::verify::SuiteParams {
                field: schema::parse_field_spec(&field)?,
                seed,
                trials,
                truncation,
                cap,
            };
            (commands::run_verify(&suite, &params)?, out)
        }
        Command::Counterexample { field, truncation, out } => {
            (commands::counterexample(schema::parse_field_spec(&field)?, truncation), out)
        }
    };
    emit(&outcome, out.as_deref())?;
    Ok(outcome.pass)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
