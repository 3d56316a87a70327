//! The `waring` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error,
//! 3 resource or numeric budget failure.

pub mod bench;
pub mod decompose;
pub mod doc;
pub mod gen;
pub mod verify;

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use waring_core::{PrimeField, Strategy};

pub use doc::{DecompositionDocument, FormDocument, NumericBlock, TermDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Budget(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] waring_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use waring_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Io { .. } => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Core(e) => match e {
                E::PrecisionBudget { .. } | E::RetryBudgetExhausted { .. } => EXIT_BUDGET,
                E::Internal(_) | E::NotSquareFree | E::ZeroDivisor => EXIT_VERIFY,
                _ => EXIT_INPUT,
            },
        }
    }
}

/// Coefficient field selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(PrimeField),
}

impl FromStr for FieldChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rational" {
            return Ok(FieldChoice::Rational);
        }
        let p = s.strip_prefix("prime:").ok_or_else(|| format!("expected \"rational\" or \"prime:p\", got {s:?}"))?;
        let p: u64 = p.parse().map_err(|_| format!("bad modulus {p:?}"))?;
        PrimeField::new(p).map(FieldChoice::Prime).map_err(|e| e.to_string())
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "rational"),
            FieldChoice::Prime(p) => write!(f, "prime:{}", p.modulus()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "waring", version, about = "Minimal Waring decompositions of binary forms")]
pub struct Cli {
    /// Cap on the working precision of the numeric layer, in bits.
    #[arg(long, global = true, env = "WARING_MAX_PRECISION_BITS")]
    pub max_precision_bits: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbolic (and optionally certified numeric) decomposition.
    Decompose(decompose::DecomposeArgs),
    /// Rank, border rank, uniqueness and kernel degrees.
    Rank(RankArgs),
    /// Check a decomposition document against a form.
    Verify(verify::VerifyArgs),
    /// Generate test forms with ground truth.
    Gen(gen::GenArgs),
    /// Time the pipeline stages over a range of degrees.
    Bench(bench::BenchArgs),
}

#[derive(Debug, clap::Args)]
pub struct RankArgs {
    /// Form document, or `-` for stdin.
    pub input: PathBuf,
    #[arg(long, default_value = "rational")]
    pub field: FieldChoice,
    /// Print a JSON object instead of the one-line summary.
    #[arg(long)]
    pub json: bool,
}

pub fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: waring_core::Error| e.to_string())
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(io)
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_form_doc(path: &Path) -> Result<FormDocument, CliError> {
    doc::from_json(&read_input(path)?, "form document")
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Decompose(args) => decompose::run(&args, cli.max_precision_bits),
        Command::Rank(args) => run_rank(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Gen(args) => gen::run(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub border_rank: usize,
    pub unique: bool,
    #[serde(rename = "N1")]
    pub n1: usize,
    #[serde(rename = "N2")]
    pub n2: usize,
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank={} border_rank={} unique={} N1={} N2={}", self.rank, self.border_rank, self.unique, self.n1, self.n2)
    }
}

pub fn rank_report<F: waring_core::Field>(f: &F, doc: &FormDocument) -> Result<RankReport, CliError> {
    let form = doc.to_form(f)?;
    if form.degree() == 1 {
        return Ok(RankReport { rank: 1, border_rank: 1, unique: true, n1: 0, n2: 1 });
    }
    let kp = waring_core::hankel::kernel_pair(f, &form)?;
    let (rank, unique) = waring_core::decompose::rank_of(f, &kp)?;
    Ok(RankReport { rank, border_rank: kp.n1 + 1, unique, n1: kp.n1, n2: kp.n2 })
}

fn run_rank(args: &RankArgs) -> Result<i32, CliError> {
    let doc = read_form_doc(&args.input)?;
    let report = match args.field {
        FieldChoice::Rational => rank_report(&waring_core::Rationals, &doc)?,
        FieldChoice::Prime(p) => rank_report(&p, &doc)?,
    };
    if args.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("{report}");
    }
    Ok(EXIT_OK)
}
