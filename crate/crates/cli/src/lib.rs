//! Command-line front end for `acdual_core`: root system summaries, duality tables, Mackey
//! decompositions and verification suites, rendered as text tables, JSON or CSV.

pub mod commands;
pub mod config;
pub mod render;
pub mod verify;

pub use config::{Cli, CliError, CliResult, Command, RunConfig};

/// What the process prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl From<CliResult<(String, bool)>> for Outcome {
    fn from(r: CliResult<(String, bool)>) -> Self {
        match r {
            Ok((stdout, passed)) => Outcome {
                stdout,
                stderr: String::new(),
                code: if passed { 0 } else { 1 },
            },
            Err(e) => Outcome {
                stdout: String::new(),
                stderr: format!("{e}\n"),
                code: e.exit_code(),
            },
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let report = |text: String| (text, true);
    match &cli.command {
        Command::Rootsys(args) => RunConfig::from_args(args, false)
            .and_then(|c| commands::rootsys(&c))
            .map(report),
        Command::Duality(args) => RunConfig::from_args(args, false)
            .and_then(|c| commands::duality(&c))
            .map(report),
        Command::Mackey(args) => RunConfig::from_args(args, false)
            .and_then(|c| commands::mackey(&c))
            .map(report),
        Command::Verify(args) => RunConfig::from_args(args, true).and_then(|c| verify::run(&c)),
    }
    .into()
}
