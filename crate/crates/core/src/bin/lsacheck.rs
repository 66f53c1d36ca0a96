use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lsalgebroid::cli::{execute, Invocation};

/// Exact certificates for structures on left-symmetric algebroids.
///
/// Commands: axioms, kv, compatible, nijenhuis, kvn, kvb, hn, hn2,
/// complementary, hessian, hierarchy, dual, invert, derive-n.
#[derive(Parser)]
#[command(name = "lsacheck", version)]
struct Args {
    /// Check to run.
    command: String,
    /// Path to a structure document, or the name of a shipped fixture.
    document: String,
    /// Tensor names from the document.
    tensors: Vec<String>,
    /// Highest power for `hierarchy`.
    #[arg(long, default_value_t = 3)]
    depth: u32,
    /// Emit a single JSON document.
    #[arg(long)]
    machine: bool,
    /// Include timing in human-readable output.
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = execute(&Invocation {
        command: args.command,
        document: args.document,
        tensors: args.tensors,
        depth: args.depth,
        machine: args.machine,
        verbose: args.verbose,
    });
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
