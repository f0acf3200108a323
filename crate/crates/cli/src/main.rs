mod args;
mod commands;
mod plot;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit 1: the computation failed. Exit 2: the request was malformed.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl From<vortexre::Error> for CliError {
    fn from(e: vortexre::Error) -> Self {
        use vortexre::Error as E;
        match e {
            E::InvalidInput(_) | E::Parse { .. } | E::RingMismatch(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Compute(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Compute(format!("json: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = commands::validate(&cli.global).and_then(|ctx| match &cli.command {
        Command::Find(a) => commands::find(&ctx, a),
        Command::Certify(a) => commands::certify(&ctx, a),
        Command::Continue(a) => commands::continuation(&ctx, a),
        Command::Plot(a) => commands::plot(a),
        Command::BuildSystem(a) => commands::build_system(&ctx, a),
        Command::Simulate(a) => commands::simulate(&ctx, a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
