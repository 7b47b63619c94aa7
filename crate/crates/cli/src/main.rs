mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use apery_forge::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "apery-forge", version, about = "Apéry-like recurrences and linear forms in Lerch-type zeta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact rows n, u_n, v_n and the convergent v_n/u_n.
    Gen(Common),
    /// The family limit from the convergents, checked against the series oracle.
    Constant(Common),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Growth of u_n and r_n against the characteristic roots.
    Asymptotics(AsymptoticsArgs),
    /// Denominators of u_n and the smallest A with A^n u_n integral.
    Integrality(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// z1minus, z2minus, z2, z3 or z4
    #[arg(long)]
    pub family: String,
    /// Exact rational "p/q", or complex "a/b+c/di" where supported
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    /// Number of terms N (rows 0..=N); each command has its own default
    #[arg(long)]
    pub terms: Option<usize>,
    /// Decimal digits for printed values
    #[arg(long, env = "APERY_FORGE_PRECISION", default_value_t = 30)]
    pub digits: u32,
    /// Tolerance; defaults to 1e-(digits-10), or per family for integrals
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for randomized components
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to a file instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// construction, recurrence, integral, symmetry or all
    pub what: String,
    /// Replace the coefficient table by a corrupted copy.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[command(flatten)]
    pub common: Common,
    /// Print every k-th row
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
}

/// Exit codes: 0 ok, 1 verification failure, 2 bad parameter,
/// 3 degenerate recurrence, 4 non-convergence.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Unsupported(_) => 2,
        Error::DegenerateRecurrence { .. } => 3,
        Error::NonConvergence(_) | Error::PrecisionExhausted { .. } | Error::BudgetExceeded { .. } => 4,
        Error::ConstructionInconsistency(_) => 1,
        Error::Numeric(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(c) => commands::gen(&c),
        Command::Constant(c) => commands::constant(&c),
        Command::Verify(v) => commands::verify(&v),
        Command::Asymptotics(a) => commands::asymptotics(&a),
        Command::Integrality(c) => commands::integrality(&c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
