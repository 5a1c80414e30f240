//! Command-line front end for `wigner-ks`.
//!
//! Exit codes: 0 when every check passes, 1 on a tolerance failure or an
//! I/O error, 2 on a usage error.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};
use config::RunConfig;
use output::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Spectral(#[from] wigner_ks::spectral::SpectralError),
    #[error(transparent)]
    Hydrogen(#[from] wigner_ks::hydrogen::HydrogenError),
    #[error(transparent)]
    Wigner(#[from] wigner_ks::wigner::WignerError),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn emit<R: Report>(report: &R, cfg: &RunConfig) -> Result<bool, CliError> {
    let text = output::render(report, cfg.format)?;
    output::write(&text, cfg.output.as_deref())?;
    Ok(report.passed())
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(cli)?;
    if let Some(threads) = cfg.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match &cli.command {
        Command::Spectrum(a) => emit(&commands::spectrum(a.kind, &cfg)?, &cfg),
        Command::Verify(a) => emit(&commands::verify(a.suite, &cfg)?, &cfg),
        Command::Eigenfunction(a) => emit(&commands::eigenfunction(a.kind, &cfg)?, &cfg),
        Command::Map(_) => emit(&commands::map(&cfg)?, &cfg),
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
