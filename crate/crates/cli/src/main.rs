use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod eval;
mod output;
mod spectrum;
mod verify;

/// Orthogonal polynomials from su(1,1) representations: evaluation,
/// truncated spectra and numerical identity checks.
#[derive(Parser)]
#[command(name = "su11poly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial family at lists of degrees and points.
    Eval(eval::EvalArgs),
    /// Eigenvalues of a truncated Hamiltonian or Y_sA matrix.
    Spectrum(spectrum::SpectrumArgs),
    /// Check an identity over a parameter grid.
    Verify(verify::VerifyArgs),
    /// Check one integral identity (quadrature against closed form).
    Quad(verify::QuadArgs),
    /// Run every identity on its default grid.
    Suite(verify::SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown names or out-of-domain parameters (exit 2).
    Usage(String),
    /// A computation failed numerically (exit 1).
    Numeric(String),
}

impl From<su11poly::Error> for CliError {
    fn from(e: su11poly::Error) -> Self {
        if e.is_domain_like() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

/// What a command produced: its rendered output and exit status.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            // a closed pipe is not an error for a batch tool
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (outcome, out) = match cli.command {
        Command::Eval(a) => (eval::run(&a)?, a.out),
        Command::Spectrum(a) => (spectrum::run(&a)?, a.out),
        Command::Verify(a) => (verify::run_verify(&a)?, a.out),
        Command::Quad(a) => (verify::run_quad(&a)?, a.out),
        Command::Suite(a) => (verify::run_suite(&a)?, a.out),
    };
    emit(&out, &outcome.text)?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
