//! `waring decompose`: single files and batch directories.

use std::hash::Hasher;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use waring_core::numeric::{decompose_numeric_with, NumericOptions};
use waring_core::{fast_decompose, Rationals, Strategy};

use crate::doc::{self, DecompositionDocument, FormDocument, NumericBlock};
use crate::{parse_strategy, read_form_doc, write_output, CliError, FieldChoice, EXIT_OK};

#[derive(Debug, clap::Args)]
pub struct DecomposeArgs {
    /// Form document, or `-` for stdin.
    #[arg(required_unless_present = "batch")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "det", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also compute certified numeric terms with residual at most 2^-bits.
    #[arg(long, conflicts_with = "symbolic_only")]
    pub bits: Option<u64>,
    #[arg(long)]
    pub symbolic_only: bool,
    #[arg(long, default_value = "rational")]
    pub field: FieldChoice,
    /// Output file; in batch mode, the output directory.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Human-readable summary instead of JSON.
    #[arg(long)]
    pub plain: bool,
    /// Decompose every `*.json` file of a directory.
    #[arg(long, conflicts_with = "input")]
    pub batch: Option<PathBuf>,
}

/// Decomposition settings shared by single and batch runs.
#[derive(Clone, Debug)]
pub struct Job {
    pub field: FieldChoice,
    pub strategy: Strategy,
    pub seed: u64,
    pub bits: Option<u64>,
    pub max_precision_bits: Option<u64>,
}

pub fn decompose_doc(form_doc: &FormDocument, job: &Job) -> Result<DecompositionDocument, CliError> {
    match job.field {
        FieldChoice::Prime(p) => {
            if job.bits.is_some() {
                return Err(CliError::Input("numeric approximation requires rational field".into()));
            }
            let form = form_doc.to_form(&p)?;
            let sd = fast_decompose(&p, &form, job.strategy, job.seed)?;
            Ok(DecompositionDocument::symbolic(&p, &job.field.to_string(), &sd))
        }
        FieldChoice::Rational => {
            let f = Rationals;
            let form = form_doc.to_form(&f)?;
            let sd = fast_decompose(&f, &form, job.strategy, job.seed)?;
            let mut out = DecompositionDocument::symbolic(&f, "rational", &sd);
            if let Some(bits) = job.bits {
                let opts = NumericOptions { max_precision_bits: job.max_precision_bits, ..NumericOptions::default() };
                let nd = decompose_numeric_with(&sd, &form, bits, &opts)?;
                out.numeric = Some(NumericBlock::new(&nd, &form));
            }
            Ok(out)
        }
    }
}

pub fn plain_summary(doc: &DecompositionDocument) -> String {
    let mut s = format!(
        "rank {} (border rank {}, {}){}\n",
        doc.rank,
        doc.border_rank,
        if doc.unique { "unique" } else { "not unique" },
        match (doc.n1, doc.n2) {
            (Some(a), Some(b)) => format!(", N1={a} N2={b}"),
            _ => String::new(),
        }
    );
    s.push_str(&format!("Q  = {}\n", display_q(&doc.q)));
    s.push_str(&format!("T  = {}\n", display_x(&doc.t)));
    s.push_str(&format!("dQ = {}\n", display_x(&doc.dq)));
    if let Some(l) = &doc.lambda_inf {
        s.push_str(&format!("lambda_inf = {l}\n"));
    }
    if let Some(n) = &doc.numeric {
        s.push_str(&format!("numeric terms at 2^-{} (c-basis residual <= {}):\n", n.requested_bits, short(&n.residual_bound)));
        if let Some(a) = &n.residual_bound_normalized {
            s.push_str(&format!("  a-basis residual <= {}\n", short(a)));
        }
        for t in &n.terms {
            let base = if t.at_infinity { "x".to_string() } else { format!("({}) x + y", complex(&t.alpha.re, &t.alpha.im)) };
            s.push_str(&format!("  ({}) ({base})^D  +/- {}\n", complex(&t.lambda.re, &t.lambda.im), short(&t.lambda.rad)));
        }
    }
    s
}

fn short(dec: &str) -> String {
    match dec.parse::<f64>() {
        Ok(v) => format!("{v:.6e}"),
        Err(_) => dec.to_string(),
    }
}

fn complex(re: &str, im: &str) -> String {
    match im.strip_prefix('-') {
        Some(m) => format!("{} - {}i", short(re), short(m)),
        None => format!("{} + {}i", short(re), short(im)),
    }
}

fn monomial(c: &str, x: usize, y: usize) -> String {
    let mut m = String::new();
    if x > 0 {
        m.push_str(if x == 1 { "x".into() } else { format!("x^{x}") }.as_str());
    }
    if y > 0 {
        m.push_str(if y == 1 { "y".into() } else { format!("y^{y}") }.as_str());
    }
    match (c, m.is_empty()) {
        (_, true) => c.to_string(),
        ("1", false) => m,
        ("-1", false) => format!("-{m}"),
        _ => format!("{c} {m}"),
    }
}

fn join(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        match (i, p.strip_prefix('-')) {
            (0, _) => out.push_str(p),
            (_, Some(rest)) => out.push_str(&format!(" - {rest}")),
            (_, None) => out.push_str(&format!(" + {p}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn display_q(q: &[String]) -> String {
    let r = q.len().saturating_sub(1);
    join(q.iter().enumerate().rev().filter(|(_, c)| c.as_str() != "0").map(|(i, c)| monomial(c, i, r - i)).collect())
}

fn display_x(p: &[String]) -> String {
    join(p.iter().enumerate().rev().filter(|(_, c)| c.as_str() != "0").map(|(i, c)| monomial(c, i, 0)).collect())
}

pub fn run(args: &DecomposeArgs, max_precision_bits: Option<u64>) -> Result<i32, CliError> {
    if args.bits.is_some() && matches!(args.field, FieldChoice::Prime(_)) {
        return Err(CliError::Input("numeric approximation requires rational field".into()));
    }
    let job = Job { field: args.field, strategy: args.strategy, seed: args.seed, bits: args.bits, max_precision_bits };
    if let Some(dir) = &args.batch {
        return run_batch(dir, args.output.as_deref(), &job);
    }
    let input = args.input.as_deref().expect("clap requires an input without --batch");
    let out = decompose_doc(&read_form_doc(input)?, &job)?;
    let text = if args.plain { plain_summary(&out) } else { doc::to_json(&out) };
    write_output(args.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

/// 64-bit FNV-1a of a file name.
pub fn name_hash(name: &str) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write(name.as_bytes());
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchEntry {
    pub file: String,
    pub exit_code: i32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Decomposes every `*.json` file of `dir` into `out_dir` (default
/// `dir/decompositions`), writes `index.json` there and prints it. The
/// exit code is the largest one of any file.
pub fn run_batch(dir: &Path, out_dir: Option<&Path>, job: &Job) -> Result<i32, CliError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .map_err(io(dir))?
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_file())
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    let out_dir = out_dir.map(Path::to_path_buf).unwrap_or_else(|| dir.join("decompositions"));
    std::fs::create_dir_all(&out_dir).map_err(io(&out_dir))?;
    let entries: Vec<BatchEntry> = names
        .par_iter()
        .map(|name| {
            let seed = job.seed ^ name_hash(name);
            let file_job = Job { seed, ..job.clone() };
            let out_name = format!("{}.decomposition.json", name.trim_end_matches(".json"));
            let result = read_form_doc(&dir.join(name)).and_then(|d| decompose_doc(&d, &file_job)).and_then(|d| {
                let path = out_dir.join(&out_name);
                std::fs::write(&path, doc::to_json(&d)).map_err(|source| CliError::Io { path, source })?;
                Ok(d.rank)
            });
            match result {
                Ok(rank) => BatchEntry { file: name.clone(), exit_code: EXIT_OK, seed, output: Some(out_name), rank: Some(rank), error: None },
                Err(e) => BatchEntry { file: name.clone(), exit_code: e.exit_code(), seed, output: None, rank: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let index = doc::to_json(&entries);
    let index_path = out_dir.join("index.json");
    std::fs::write(&index_path, &index).map_err(io(&index_path))?;
    print!("{index}");
    Ok(entries.iter().map(|e| e.exit_code).max().unwrap_or(EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_rendering() {
        assert_eq!(display_q(&["-2".into(), "0".into(), "1".into()]), "x^2 - 2 y^2");
        assert_eq!(display_q(&["1".into(), "-1".into()]), "-x + y");
        assert_eq!(display_x(&["0".into(), "3/2".into()]), "3/2 x");
        assert_eq!(display_x(&[]), "0");
    }

    #[test]
    fn fnv_is_stable() {
        assert_eq!(name_hash(""), 0xcbf29ce484222325);
        assert_eq!(name_hash("a"), 0xaf63dc4c8601ec8c);
    }
}
