//! Text front end for the agdoid engine: expression grammar, commands and report emitters.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod eval;
pub mod grammar;
pub mod reference;
pub mod report;

pub use grammar::{parse, parse_script, print, Expr, ParseError, Script, Statement};
pub use report::{Format, Report, Timing, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("line {line}: {message}")]
    Eval { line: usize, message: String },
    #[error("engine error: {0}")]
    Engine(agdoid_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl From<agdoid_core::Error> for CliError {
    fn from(e: agdoid_core::Error) -> CliError {
        CliError::Engine(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "agdoid", version, about = "Exact checks of AGD algebroid identities over opers")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Truncation floor for pseudo-differential products; may not be shallower than -(N+3).
    #[arg(long, global = true, env = "AGDOID_TRUNC", allow_negative_numbers = true)]
    pub trunc: Option<i32>,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Brackets, anchors and identities of the algebroid over an oper.
    #[command(subcommand)]
    Agd(AgdCommand),
    /// Matrix lifts and curvature.
    #[command(subcommand)]
    Matrix(MatrixCommand),
    /// Phase-space constraints, linear systems and Hamiltonians.
    #[command(subcommand)]
    Phase(PhaseCommand),
    /// The BRST charge.
    #[command(subcommand)]
    Brst(BrstCommand),
    /// Finite-dimensional Poisson algebroids.
    #[command(subcommand)]
    Poisson(PoissonCommand),
    /// Frozen normalizations.
    #[command(subcommand)]
    Conformance(ConformanceCommand),
}

#[derive(Debug, Clone, Args)]
pub struct SectionArgs {
    /// Script declaring fields, an oper and sections; a built-in order-N setup is used without it.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Oper name in the script; defaults to the first oper.
    #[arg(long)]
    pub oper: Option<String>,
    /// Name of the first section in the script.
    #[arg(long, default_value = "X")]
    pub x: String,
    /// Name of the second section in the script.
    #[arg(long, default_value = "Y")]
    pub y: String,
    /// Order of the built-in setup.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum N3Control {
    SwappedDictionary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JacobiControl {
    PrintedAnomaly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CocycleControl {
    NonClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LiftControl {
    PrintedX31,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurvatureControl {
    LiteralAbar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstraintControl {
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompatControl {
    LiteralLax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HomomorphismControl {
    PrintedSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BrstControl {
    Corrupt,
}

#[derive(Debug, Subcommand)]
pub enum AgdCommand {
    /// Section bracket and central term, with antisymmetry.
    Bracket(SectionArgs),
    /// Anchor variations; over SL opers W_1 must stay fixed.
    Anchor(SectionArgs),
    /// AGD bracket in its two forms against the anchor pairing.
    Pair(SectionArgs),
    /// Order-three anchor and brackets against the printed formulas.
    N3Verify {
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<N3Control>,
    },
    /// Jacobi identity completed by the structure-function variation.
    Jacobi {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<JacobiControl>,
    },
    /// Closedness of the ∂̄ cocycles and detection of coboundaries.
    Cocycle {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<CocycleControl>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatrixCommand {
    /// Matrix lift and matrix bracket against the algebroid.
    Lift {
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<LiftControl>,
    },
    /// Entries of the order-three curvature.
    Curvature,
    /// Curvature entries against the constraints.
    W3Verify {
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<CurvatureControl>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PhaseCommand {
    /// Constraint components against the reference formulas.
    Constraint {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<ConstraintControl>,
    },
    /// On-shell compatibility of the linear system.
    Compat {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<CompatControl>,
    },
    /// Hamiltonian brackets against the section bracket.
    Homomorphism {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<HomomorphismControl>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BrstCommand {
    /// The charge and its ghost number.
    Omega {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Nilpotency by momentum degree.
    Check {
        /// Order of the oper, 2 or 3.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Negative control replacing the reference input.
        #[arg(long, value_enum)]
        control: Option<BrstControl>,
        /// Term flipped by the corrupt control.
        #[arg(long)]
        index: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PoissonCommand {
    /// Algebroid axioms of the cotangent bracket of a bivector script.
    Verify {
        /// Script declaring the dimension and the upper entries of the bivector.
        #[arg(long)]
        bivector: PathBuf,
        /// Number of random probe sections.
        #[arg(long, default_value_t = 3)]
        probes: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConformanceCommand {
    /// Print every frozen normalization.
    Table,
}

/// Runs a parsed command line; the timing entry is filled only on request.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = commands::dispatch(cli)?;
    if cli.timing {
        report.timing = Some(Timing { millis: start.elapsed().as_secs_f64() * 1e3 });
    }
    Ok(report)
}

/// Outcome of one invocation: stdout, stderr and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments and runs; usage, parse and engine errors exit with 2.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { stdout: text, stderr: String::new(), code: 0 }
                }
                _ => Outcome { stdout: String::new(), stderr: text, code: 2 },
            };
        }
    };
    match run(&cli) {
        Ok(r) => Outcome { stdout: r.render(cli.format), stderr: String::new(), code: r.verdict.exit_code() },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 2 },
    }
}
