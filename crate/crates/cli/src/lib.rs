//! The `ges` command-line tool as a library, so the commands can be driven
//! from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

pub mod angle;
pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod statefile;

pub use args::Cli;
pub use commands::Outcome;
pub use error::{CliError, Result};

use args::Command;
use output::{Format, Output};

pub fn format_of(cli: &Cli) -> Format {
    match (cli.global.json, cli.global.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => Format::Text,
    }
}

/// Runs one command with output to stdout or `--out`.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut out = Output::new(format_of(cli), cli.global.out.as_deref())?;
    let outcome = run_with(cli, &mut out)?;
    out.finish()?;
    Ok(outcome)
}

pub fn run_with(cli: &Cli, out: &mut Output) -> Result<Outcome> {
    let tol = cli.global.tol;
    match &cli.command {
        Command::Simulate(a) => commands::simulate::run(a, tol, out),
        Command::Sweep(a) => commands::sweep::run(a, out),
        Command::Basis(a) => commands::basis::run(a, tol, out),
        Command::Decompose(a) => commands::decompose::run(a, tol, out),
        Command::Verify(a) => commands::verify::run(a, cli.global.seed, out),
    }
}
