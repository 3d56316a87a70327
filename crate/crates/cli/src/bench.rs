//! `waring bench`: per-stage timing tables.

use std::path::PathBuf;

use waring_bench::{bench_prime, bench_rational, doubling_ratios, to_csv, BenchRow};
use waring_core::{PrimeField, Strategy, MERSENNE_61};

use crate::{parse_strategy, write_output, CliError, FieldChoice, EXIT_OK};

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = FieldChoice::Prime(PrimeField::new(MERSENNE_61).expect("prime")))]
    pub field: FieldChoice,
    #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192,16384")]
    pub degrees: Vec<usize>,
    /// Runs per degree; the table reports medians.
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, default_value = "det", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write CSV instead of the aligned table.
    #[arg(long)]
    pub csv: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn table(rows: &[BenchRow]) -> String {
    let mut s = format!(
        "{:>8} {:>8} {:>12} {:>12} {:>12} {:>12} {:>12} {:>8}\n",
        "D", "rank", "kernel_pair", "rank_test", "build_q", "sym_lambda", "core", "ratio"
    );
    let ratios = doubling_ratios(rows);
    for (i, r) in rows.iter().enumerate() {
        let ratio = if i == 0 { "-".to_string() } else { format!("{:.2}", ratios[i - 1]) };
        s.push_str(&format!(
            "{:>8} {:>8} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>8}\n",
            r.degree, r.rank, r.kernel_pair, r.rank_test, r.build_q, r.symbolic_lambda, r.core, ratio
        ));
    }
    s
}

pub fn run(args: &BenchArgs) -> Result<i32, CliError> {
    if args.degrees.is_empty() || args.degrees.contains(&0) {
        return Err(CliError::Input("degrees must be positive".into()));
    }
    let rows = match args.field {
        FieldChoice::Prime(p) => {
            if let Some(&d) = args.degrees.iter().find(|&&d| d as u64 >= p.modulus()) {
                return Err(CliError::Input(format!("degree {d} needs a prime larger than {d}")));
            }
            bench_prime(&p, &args.degrees, args.repeat, args.strategy, args.seed)?
        }
        FieldChoice::Rational => bench_rational(&args.degrees, args.repeat, args.strategy, args.seed)?,
    };
    let text = if args.csv { to_csv(&rows) } else { table(&rows) };
    write_output(args.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}
