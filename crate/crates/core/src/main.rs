use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use charsheaf::cli::{execute, Invocation};

/// Exact character tables, L-packets, crossed S-matrices and Shintani
/// descent for small solvable groups over finite fields.
#[derive(Parser, Debug)]
#[command(name = "charsheaf", version)]
struct Args {
    /// Run configuration.
    #[arg(long)]
    config: PathBuf,
    /// One of chartable, blocks, packets, smatrix, shintani, modular,
    /// verify-all; overrides the configured commands.
    #[arg(long)]
    command: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let inv = Invocation { config: args.config, command: args.command, out: args.out, threads: args.threads };
    let outcome = execute(&inv);
    if let Some(r) = outcome.report.as_ref().filter(|_| !outcome.written) {
        let _ = std::io::stdout().write_all(r.render().as_bytes());
    }
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    ExitCode::from(outcome.exit)
}
