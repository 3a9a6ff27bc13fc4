use std::io::Write;
use std::process::ExitCode;

use acdual_cli::{execute, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let outcome = execute(&Cli::parse());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
