//! `waring gen`: forms with known decompositions or kernel structure.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use waring_core::field::format_rational;
use waring_core::oracle::{instance_from_kernel_pair, rational_instance};
use waring_core::{BigRational, BinaryForm, BivariatePoly, Field, Rationals};

use crate::doc::{self, FormDocument};
use crate::{write_output, CliError, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    /// Sum of `rank` powers of linear forms with rational coefficients.
    RationalRoots,
    /// Form whose Hankel kernels are generated by `--pv` and `--pw`.
    KernelPair,
    /// Random integer coefficients.
    Generic,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub mode: GenMode,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Coefficients of `x^i y^(n-i)`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pv: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pw: Vec<String>,
    /// Bound on numerators and denominators of random values.
    #[arg(long, default_value_t = 10)]
    pub height: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Form document path; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Ground-truth path; defaults to `<output>.truth.json` when `--output` is given.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

/// `lambda (alpha x + y)^D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedTerm {
    pub lambda: String,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundTruth {
    pub mode: GenMode,
    pub degree: usize,
    pub seed: u64,
    pub expected_rank: usize,
    pub expected_unique: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<PlantedTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pv: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pw: Option<Vec<String>>,
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64, nonzero: bool) -> BigRational {
    loop {
        let n = rng.gen_range(-height..=height);
        let d = rng.gen_range(1..=height);
        if !(nonzero && n == 0) {
            return BigRational::new(n.into(), d.into());
        }
    }
}

/// `rank` terms with distinct rational `alpha` and nonzero weights.
pub fn rational_roots(degree: usize, rank: usize, height: i64, seed: u64) -> Result<(BinaryForm<BigRational>, GroundTruth), CliError> {
    if degree == 0 || rank == 0 || 2 * rank > degree + 2 {
        return Err(CliError::Input(format!("need 1 <= rank <= (D + 2) / 2 and D >= 1, got rank {rank}, D {degree}")));
    }
    let height = height.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alphas: Vec<BigRational> = Vec::with_capacity(rank);
    let mut tries = 0;
    while alphas.len() < rank {
        let a = random_rational(&mut rng, height + tries / 64, false);
        if !alphas.contains(&a) {
            alphas.push(a);
        }
        tries += 1;
    }
    let lambdas: Vec<BigRational> = (0..rank).map(|_| random_rational(&mut rng, height, true)).collect();
    let points: Vec<_> = alphas.iter().map(|a| (a.clone(), BigRational::from_integer(1.into()))).collect();
    let form = rational_instance(&points, &lambdas, degree)?;
    let truth = GroundTruth {
        mode: GenMode::RationalRoots,
        degree,
        seed,
        expected_rank: rank,
        expected_unique: 2 * rank <= degree + 1,
        terms: lambdas.iter().zip(&alphas).map(|(l, a)| PlantedTerm { lambda: format_rational(l), alpha: format_rational(a) }).collect(),
        pv: None,
        pw: None,
    };
    Ok((form, truth))
}

pub fn kernel_pair_instance(pv: &[String], pw: &[String]) -> Result<(BinaryForm<BigRational>, GroundTruth), CliError> {
    let f = Rationals;
    let parse = |v: &[String]| v.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>, _>>();
    let p = BivariatePoly::new(parse(pv)?);
    let w = BivariatePoly::new(parse(pw)?);
    let form = instance_from_kernel_pair(&p, &w)?;
    let (n1, n2) = (p.degree() - 1, w.degree() - 1);
    let squarefree = p.is_squarefree(&f)?;
    let truth = GroundTruth {
        mode: GenMode::KernelPair,
        degree: form.degree(),
        seed: 0,
        expected_rank: if squarefree { n1 + 1 } else { n2 + 1 },
        expected_unique: squarefree && n1 < n2,
        terms: Vec::new(),
        pv: Some(pv.to_vec()),
        pw: Some(pw.to_vec()),
    };
    Ok((form, truth))
}

/// Integer normalized coefficients in `[-height, height]`. The expected
/// rank is the generic one, `floor(D/2) + 1`, unique for odd `D`.
pub fn generic(degree: usize, height: i64, seed: u64) -> Result<(BinaryForm<BigRational>, GroundTruth), CliError> {
    if degree == 0 {
        return Err(CliError::Input("degree must be positive".into()));
    }
    let height = height.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let form = loop {
        let a: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-height..=height)).collect();
        if let Ok(form) = BinaryForm::from_normalized_i64(&Rationals, &a) {
            break form;
        }
    };
    let truth = GroundTruth {
        mode: GenMode::Generic,
        degree,
        seed,
        expected_rank: degree / 2 + 1,
        expected_unique: degree % 2 == 1,
        terms: Vec::new(),
        pv: None,
        pw: None,
    };
    Ok((form, truth))
}

pub fn generate(args: &GenArgs) -> Result<(FormDocument, GroundTruth), CliError> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| CliError::Input(format!("--mode {:?} needs --{name}", args.mode)));
    let (form, mut truth) = match args.mode {
        GenMode::RationalRoots => rational_roots(need(args.degree, "degree")?, need(args.rank, "rank")?, args.height, args.seed)?,
        GenMode::KernelPair => {
            if args.pv.is_empty() || args.pw.is_empty() {
                return Err(CliError::Input("--mode kernel-pair needs --pv and --pw".into()));
            }
            kernel_pair_instance(&args.pv, &args.pw)?
        }
        GenMode::Generic => generic(need(args.degree, "degree")?, args.height, args.seed)?,
    };
    truth.seed = args.seed;
    Ok((FormDocument::normalized(&Rationals, &form), truth))
}

fn sidecar_path(args: &GenArgs) -> Option<PathBuf> {
    args.sidecar.clone().or_else(|| {
        args.output.as_deref().map(|o: &Path| {
            let stem = o.file_stem().and_then(|s| s.to_str()).unwrap_or("form");
            o.with_file_name(format!("{stem}.truth.json"))
        })
    })
}

pub fn run(args: &GenArgs) -> Result<i32, CliError> {
    let (form, truth) = generate(args)?;
    write_output(args.output.as_deref(), &doc::to_json(&form))?;
    if let Some(p) = sidecar_path(args) {
        write_output(Some(&p), &doc::to_json(&truth))?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots_sidecar_lists_terms() {
        let (form, truth) = rational_roots(7, 3, 10, 1).unwrap();
        assert_eq!(form.degree(), 7);
        assert_eq!(truth.terms.len(), 3);
        assert!(truth.expected_unique);
    }

    #[test]
    fn kernel_pair_cubes_give_6x2y2() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let (form, truth) = kernel_pair_instance(&s(&["1", "0", "0", "0"]), &s(&["0", "0", "0", "1"])).unwrap();
        let a = form.normalized();
        assert_eq!(form.degree(), 4);
        assert!(a.iter().enumerate().all(|(i, c)| (i == 2) != (c == &BigRational::from_integer(0.into()))));
        assert_eq!(truth.expected_rank, 3);
    }

    #[test]
    fn generic_rank_expectation() {
        assert_eq!(generic(9, 100, 3).unwrap().1.expected_rank, 5);
        assert_eq!(generic(10, 100, 3).unwrap().1.expected_rank, 6);
    }

    #[test]
    fn rank_too_large_is_rejected() {
        assert!(rational_roots(4, 4, 10, 0).is_err());
    }
}
