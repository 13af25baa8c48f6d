use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use torus_core::tamagawa::Grid;
use torus_core::ErrorKind;

mod report;
mod schema;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    Core(torus_core::Error),
}

impl From<torus_core::Error> for CliError {
    fn from(e: torus_core::Error) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Invalid => 2,
                ErrorKind::Unsupported => 3,
                ErrorKind::Internal => 4,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "invalid",
            3 => "unsupported",
            _ => "internal",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

/// Algebraic tori through their character lattices.
#[derive(Parser)]
#[command(name = "torus", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, rank profile and character of the torus.
    Info { file: PathBuf },
    /// Invariant factors of H^q(G, X(T)).
    Cohomology {
        #[arg(long, default_value_t = 1)]
        q: u32,
        file: PathBuf,
    },
    /// T(R) ≅ (R^×)^a × (C^×)^b × (S^1)^c for a torus split by a quadratic field.
    ClassifyReal { file: PathBuf },
    /// Whether two tori over the same group are isogenous.
    Isogeny { a: PathBuf, b: PathBuf },
    /// Canonical coefficients and local volumes for primes up to pmax.
    Volumes {
        #[arg(long, default_value_t = 100)]
        pmax: u64,
        file: PathBuf,
    },
    /// Residue of the Artin L-function of the character module at s = 1.
    Residue {
        #[arg(long, default_value_t = 12)]
        prec: usize,
        file: PathBuf,
    },
    /// Tamagawa number from H^1 and the cyclic-kernel Sha^2.
    Tamagawa { file: PathBuf },
    /// Numerical adelic volume check for G_m.
    CheckGm {
        #[arg(long, default_value_t = 100)]
        pmax: u64,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

fn run(command: Command) -> Result<serde_json::Value, CliError> {
    match command {
        Command::Info { file } => report::info(&schema::read_torus(&file)?),
        Command::Cohomology { q, file } => report::cohomology_report(&schema::read_torus(&file)?, q),
        Command::ClassifyReal { file } => report::classify_real_report(&schema::read_torus(&file)?),
        Command::Isogeny { a, b } => report::isogeny_report(&schema::read_torus(&a)?, &schema::read_torus(&b)?),
        Command::Volumes { pmax, file } => report::volumes(&schema::read_torus(&file)?, pmax),
        Command::Residue { prec, file } => report::residue_report(&schema::read_torus(&file)?, prec),
        Command::Tamagawa { file } => report::tamagawa_report(&schema::read_torus(&file)?),
        Command::CheckGm { pmax, steps, scale } => {
            let mut grid = Grid::default();
            if let Some(steps) = steps {
                grid.steps = steps;
            }
            report::check_gm(pmax, &grid, scale)
        }
    }
}

fn emit(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&json!({
                "schema_version": report::SCHEMA_VERSION,
                "error": { "kind": e.kind(), "message": e.message() },
            }));
            ExitCode::from(e.exit_code())
        }
    }
}
