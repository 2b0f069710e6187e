//! `polyharm` command-line tool.

mod commands;
mod error;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyharm::scalar::parse_rational;
use polyharm::verify::Suite;
use polyharm::Rational;

use error::CliError;

/// Polyharmonic functions on the unit disk: exact curves and cells,
/// decompositions, property suites and kernel norms.
#[derive(Parser, Debug)]
#[command(name = "polyharm", version)]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cap on summed series terms (also read from POLYHARM_TERM_CAP).
    #[arg(long, global = true)]
    term_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Almansi,
    Alternative,
    Cellular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Breakpoints and slopes of β(N, ·) and of every b_{j,N}, a_{j,N}.
    BetaCurve {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "3", value_parser = rational)]
        p_max: Rational,
    },
    /// Cell descriptor of one point (p, α).
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        p: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
    },
    /// Cells of the admissible region below α = 0.
    Cells {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "3", value_parser = rational)]
        p_max: Rational,
    },
    /// Almansi, alternative or cellular decomposition of a JSON polynomial.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "cellular")]
        mode: Mode,
    },
    /// Seeded property suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Finiteness verdict and value of ‖U_{j,N}‖_{p,α}^p.
    KernelNorm {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        p: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// ∫_{r<|z|<1} |U_{N,N}|^p dA at r = 1 − 2^{−k} with a fitted exponent.
    AnnulusScan {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational)]
        p: Rational,
        #[arg(long, default_value_t = 6)]
        k_min: u32,
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compares the Lagrange reconstruction of a polynomial with direct
    /// evaluation at seeded points inside the smallest circle.
    ExtensionCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: u32,
        /// Comma-separated radii; defaults to (N+1+k)/(2N+2), k < N.
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        radii: Option<Vec<Rational>>,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> error::Result<()> {
    if let Some(cap) = cli.term_cap {
        if cap < 1000 {
            return Err(CliError::Usage(format!("--term-cap must be at least 1000, got {cap}")));
        }
        std::env::set_var("POLYHARM_TERM_CAP", cap.to_string());
    }
    let (text, failure) = match cli.command {
        Command::BetaCurve { n, p_max } => (commands::curves::beta_curve(n, &p_max, cli.format)?, None),
        Command::Classify { n, p, alpha } => (commands::curves::classify(n, p, alpha, cli.format)?, None),
        Command::Cells { n, p_max } => (commands::curves::cells(n, &p_max, cli.format)?, None),
        Command::Decompose { input, n, mode } => commands::algebra::decompose(&input, n, mode, cli.format)?,
        Command::Verify { suite, seed, trials } => commands::algebra::verify(suite, seed, trials, cli.format)?,
        Command::KernelNorm { j, n, p, alpha, tol } => {
            (commands::numeric::kernel_norm(j, n, &p, &alpha, tol, cli.format)?, None)
        }
        Command::AnnulusScan { n, p, k_min, k_max, tol } => {
            (commands::numeric::annulus_scan(n, &p, k_min, k_max, tol, cli.format)?, None)
        }
        Command::ExtensionCheck { input, n, radii, points, seed, tol } => {
            commands::algebra::extension_check(&input, n, radii, points, seed, tol, cli.format)?
        }
    };
    output::emit(&text, cli.out.as_deref())?;
    match failure {
        Some(msg) => Err(CliError::Failed(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
