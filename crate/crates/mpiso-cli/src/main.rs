//! Command line front end for the mpiso library.
//!
//! Exit codes: 0 success, 1 verification suite failures, 2 input or flag
//! errors, 3 classification not found, 4 numerical degeneracy or internal
//! inconsistency.

use clap::{Parser, Subcommand};

use mpiso_cli::commands;
use mpiso_cli::commands::classify::ClassifyArgs;
use mpiso_cli::commands::spectral::SpectralArgs;
use mpiso_cli::commands::verify::VerifyArgs;
use mpiso_cli::report::OutputFormat;

#[derive(Parser, Debug)]
#[command(
    name = "mpiso",
    version,
    about = "Classify, verify and spectrally analyze commuting matrix tuples"
)]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// RNG seed, hex (0x...) or decimal. Falls back to MPISO_SEED; the
    /// flag wins over the environment.
    #[arg(long, global = true, env = "MPISO_SEED", value_parser = parse_seed,
          default_value = "0xC0FFEE")]
    seed: u64,
    /// Relative residual below which a verdict counts as accepted
    #[arg(long, global = true, default_value_t = mpiso::DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for the minimal isometry order of a tuple
    Classify(ClassifyArgs),
    /// Run the invariant verification suites
    Verify(VerifyArgs),
    /// Joint eigenvalues and the l_p radius sequence
    Spectral(SpectralArgs),
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16).map_err(|e| format!("invalid hex seed: {e}"))
    } else {
        s.parse().map_err(|e| format!("invalid seed: {e}"))
    }
}

fn exit_code(err: &mpiso::Error) -> i32 {
    use mpiso::Error;
    match err {
        Error::InvalidInput(_) | Error::NotCommuting { .. } | Error::Capacity { .. } => 2,
        Error::Inconsistency(_) | Error::Degeneracy(_) => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Classify(args) => {
            commands::classify::run(args, cli.seed, cli.tol, cli.output)
        }
        Command::Verify(args) => commands::verify::run(args, cli.seed, cli.output),
        Command::Spectral(args) => commands::spectral::run(args, cli.seed, cli.output),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}
