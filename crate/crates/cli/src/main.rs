use std::io::{IsTerminal, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dmu_corona_cli::{run, CliError, ErrorCode};

#[derive(Parser)]
#[command(
    name = "dmu-corona",
    about = "Corona solvers and certificates over Dirichlet-type spaces",
    long_about = "Reads a JSON job document ({\"command\"?, \"inputs\", \"params\"?}) from a \
                  file or stdin and writes a JSON report to stdout. Exit codes: 0 PASS, \
                  1 FAIL, 2 INCONCLUSIVE, 3 input error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dirichlet-type norm of one polynomial over an atomic measure
    Norm { job: Option<PathBuf> },
    /// Local Dirichlet integral with a quadrature cross-check
    Ldi { job: Option<PathBuf> },
    /// Two-sided multiplier-norm estimate for a tuple
    Multnorm { job: Option<PathBuf> },
    /// Corona solve with certificate verification
    Corona { job: Option<PathBuf> },
    /// Koszul identity deviations for a vector pair
    KoszulCheck { job: Option<PathBuf> },
    /// Stable-rank reduction of a unimodular pair
    Reduce { job: Option<PathBuf> },
    /// Seeded sweep over the library's core guarantees
    VerifySuite { job: Option<PathBuf> },
    /// Polar-grid CSV of tuple magnitudes for plotting
    GridExport { job: Option<PathBuf> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Norm { .. } => "norm",
            Command::Ldi { .. } => "ldi",
            Command::Multnorm { .. } => "multnorm",
            Command::Corona { .. } => "corona",
            Command::KoszulCheck { .. } => "koszul-check",
            Command::Reduce { .. } => "reduce",
            Command::VerifySuite { .. } => "verify-suite",
            Command::GridExport { .. } => "grid-export",
        }
    }

    fn job(&self) -> &Option<PathBuf> {
        match self {
            Command::Norm { job }
            | Command::Ldi { job }
            | Command::Multnorm { job }
            | Command::Corona { job }
            | Command::KoszulCheck { job }
            | Command::Reduce { job }
            | Command::VerifySuite { job }
            | Command::GridExport { job } => job,
        }
    }
}

fn read_job(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(path) => std::fs::read_to_string(path).map_err(|e| {
            CliError::new(ErrorCode::IoError, format!("{}: {e}", path.display()))
        }),
        None => {
            let mut stdin = std::io::stdin();
            if stdin.is_terminal() {
                // no document offered; run on defaults (empty inputs)
                return Ok("{}".to_string());
            }
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| {
                CliError::new(ErrorCode::IoError, format!("reading stdin: {e}"))
            })?;
            Ok(text)
        }
    }
}

fn print_error(error: &CliError) -> ExitCode {
    let mut text =
        serde_json::to_string_pretty(&error.to_json()).expect("error serialization");
    text.push('\n');
    print!("{text}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_job(cli.command.job()) {
        Ok(text) => text,
        Err(error) => return print_error(&error),
    };
    match run(cli.command.name(), &text) {
        Ok(report) => {
            print!("{}", report.to_json_string());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(error) => print_error(&error),
    }
}
