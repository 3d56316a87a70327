//! Stage timings of the symbolic pipeline over prime and rational fields.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use waring_core::decompose::{build_q_deterministic, build_q_interpolated, symbolic_lambda, DEFAULT_RETRY_BUDGET};
use waring_core::hankel::kernel_pair;
use waring_core::{BigRational, BinaryForm, Field, PrimeField, Rationals, Result, Strategy};

/// Form of degree `d` with uniform coefficients in `Z/pZ`.
pub fn random_prime_form(f: &PrimeField, d: usize, seed: u64) -> BinaryForm<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..f.modulus())).collect();
        if let Ok(form) = BinaryForm::from_normalized(f, a) {
            return form;
        }
    }
}

/// Form of degree `d` with integer coefficients in `[-bound, bound]`.
pub fn random_rational_form(d: usize, bound: i64, seed: u64) -> BinaryForm<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(form) = BinaryForm::from_normalized_i64(&Rationals, &a) {
            return form;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StageTimings {
    pub kernel_pair: Duration,
    pub rank: Duration,
    pub build_q: Duration,
    pub symbolic_lambda: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.kernel_pair + self.rank + self.build_q + self.symbolic_lambda
    }

    /// The two stages every input goes through.
    pub fn core(&self) -> Duration {
        self.kernel_pair + self.symbolic_lambda
    }
}

/// Runs the pipeline stage by stage; returns the timings and the rank.
pub fn time_pipeline<F: Field>(f: &F, form: &BinaryForm<F::Elem>, strategy: Strategy, seed: u64) -> Result<(StageTimings, usize)> {
    let t = Instant::now();
    let kp = kernel_pair(f, form)?;
    let kernel = t.elapsed();
    let t = Instant::now();
    let pv_squarefree = kp.pv.is_squarefree(f)?;
    let rank_time = t.elapsed();
    let t = Instant::now();
    let q = match (pv_squarefree, strategy) {
        (true, _) => kp.pv.clone(),
        (false, Strategy::Deterministic) => build_q_deterministic(f, &kp)?.0,
        (false, Strategy::Interpolated) => build_q_interpolated(f, &kp, None, seed, DEFAULT_RETRY_BUDGET)?.0,
    };
    let q_time = t.elapsed();
    let t = Instant::now();
    let sd = symbolic_lambda(f, form, &q)?;
    let lambda = t.elapsed();
    Ok((StageTimings { kernel_pair: kernel, rank: rank_time, build_q: q_time, symbolic_lambda: lambda }, sd.rank))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub degree: usize,
    pub rank: usize,
    /// Medians over the repeats, in seconds.
    pub kernel_pair: f64,
    pub rank_test: f64,
    pub build_q: f64,
    pub symbolic_lambda: f64,
    /// `kernel_pair + symbolic_lambda`.
    pub core: f64,
    pub total: f64,
}

pub fn median(mut v: Vec<Duration>) -> Duration {
    v.sort_unstable();
    v.get(v.len() / 2).copied().unwrap_or_default()
}

fn row(degree: usize, rank: usize, runs: &[StageTimings]) -> BenchRow {
    let med = |g: fn(&StageTimings) -> Duration| median(runs.iter().map(g).collect()).as_secs_f64();
    BenchRow {
        degree,
        rank,
        kernel_pair: med(|s| s.kernel_pair),
        rank_test: med(|s| s.rank),
        build_q: med(|s| s.build_q),
        symbolic_lambda: med(|s| s.symbolic_lambda),
        core: med(StageTimings::core),
        total: med(StageTimings::total),
    }
}

pub fn bench_prime(f: &PrimeField, degrees: &[usize], repeat: usize, strategy: Strategy, seed: u64) -> Result<Vec<BenchRow>> {
    degrees
        .iter()
        .map(|&d| {
            let form = random_prime_form(f, d, seed ^ d as u64);
            let mut runs = Vec::with_capacity(repeat);
            let mut rank = 0;
            for _ in 0..repeat.max(1) {
                let (t, r) = time_pipeline(f, &form, strategy, seed)?;
                runs.push(t);
                rank = r;
            }
            Ok(row(d, rank, &runs))
        })
        .collect()
}

pub fn bench_rational(degrees: &[usize], repeat: usize, strategy: Strategy, seed: u64) -> Result<Vec<BenchRow>> {
    degrees
        .iter()
        .map(|&d| {
            let form = random_rational_form(d, 100, seed ^ d as u64);
            let mut runs = Vec::with_capacity(repeat);
            let mut rank = 0;
            for _ in 0..repeat.max(1) {
                let (t, r) = time_pipeline(&Rationals, &form, strategy, seed)?;
                runs.push(t);
                rank = r;
            }
            Ok(row(d, rank, &runs))
        })
        .collect()
}

/// `core(D_(i+1)) / core(D_i)` for consecutive rows.
pub fn doubling_ratios(rows: &[BenchRow]) -> Vec<f64> {
    rows.windows(2).map(|w| w[1].core / w[0].core).collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("degree,rank,kernel_pair_s,rank_test_s,build_q_s,symbolic_lambda_s,core_s,total_s\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            r.degree, r.rank, r.kernel_pair, r.rank_test, r.build_q, r.symbolic_lambda, r.core, r.total
        ));
    }
    out
}
