mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or code parameters.
    Param(String),
    /// Bad or missing input data.
    Data(String),
    /// A computation refused because it exceeds its cap.
    Cap(String),
    /// `--verify-minimal` found a code above the lower bound.
    NotMinimal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::NotMinimal(_) => 1,
            CliError::Param(_) => 2,
            CliError::Data(_) => 3,
            CliError::Cap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Param(m) | CliError::Data(m) | CliError::Cap(m) | CliError::NotMinimal(m) => m,
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("CC_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Param(format!("CC_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Param(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Encode(a) => commands::encode(a),
        Command::Decode(a) => commands::decode(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Presets => commands::presets(),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("catcode: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
