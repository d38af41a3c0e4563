mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use dqca_core::Error;

use args::{Cli, Command};
use commands::Run;

const THREADS_VAR: &str = "DQCA_LAB_THREADS";

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters outside a model's domain: exit 2.
    Usage(String),
    /// A numerical invariant failed at run time: exit 3.
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotNormalized { .. }
            | Error::InvalidParameter { .. }
            | Error::Domain { .. }
            | Error::OddGrid(_)
            | Error::Unsupported(_) => CliError::Usage(e.to_string()),
            Error::NonFinite { .. }
            | Error::SingularPoint { .. }
            | Error::GridTooSmall { .. }
            | Error::NoConvergence { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{THREADS_VAR} must be a positive integer, got `{raw}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("{THREADS_VAR}: {e}")))
}

fn header() -> Vec<String> {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    vec![format!(
        "dqca-lab {} {}",
        env!("CARGO_PKG_VERSION"),
        argv.join(" ")
    )]
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let run = Run::from_args(&cli.common)?;
    let table = match &cli.command {
        Command::Evolve => commands::evolve(&run)?,
        Command::Sigma => commands::sigma(&run)?,
        Command::Entropy { asymptotic } => commands::entropy_table(&run, *asymptotic)?,
        Command::WeakLimit { bins } => commands::weak_limit(&run, *bins)?,
        Command::StationaryPhase {
            function: Some(which),
            t,
            points,
        } => commands::integral_table(&run, *which, t.unwrap_or(run.steps), *points)?,
        Command::StationaryPhase { function: None, .. } => commands::stationary_phase(&run)?,
        Command::Dispersion { points } => commands::dispersion_table(&run, *points)?,
    };
    table
        .emit(&header(), cli.common.out.as_deref())
        .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
