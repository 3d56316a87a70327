//! Certified numeric approximation of a symbolic decomposition.
//!
//! The roots of `Qx` are isolated in complex disks, the weights
//! `T(alpha) / Q'(alpha)` are evaluated in ball arithmetic, and the
//! midpoint terms are expanded back to the monomial coefficients `c_i` of
//! the form. Working precision doubles until the certified deviation is at
//! most `2^-ell`.

pub mod ball;
pub mod float;
pub mod roots;

use num_rational::BigRational;

pub use ball::{BallDoc, CBall};
pub use float::{Float, Round};
pub use roots::roots_approx;

use crate::decompose::{symbolic_lambda, SymbolicDecomposition};
use crate::field::{binomial_row, Rationals};
use crate::form::BinaryForm;
use crate::{Error, Result};

/// `lambda (alpha x + y)^D`, or `lambda x^D` when `at_infinity` (then
/// `alpha` is exactly 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericTerm {
    pub lambda: CBall,
    pub alpha: CBall,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericDecomposition {
    pub terms: Vec<NumericTerm>,
    pub requested_bits: u64,
    pub working_precision: u64,
    pub residual_bound: Float,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericOptions {
    /// Number of times the working precision may double.
    pub max_doublings: u32,
    /// Hard cap on the working precision.
    pub max_precision_bits: Option<u64>,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { max_doublings: 8, max_precision_bits: None }
    }
}

pub fn decompose_numeric(sd: &SymbolicDecomposition<BigRational>, form: &BinaryForm<BigRational>, ell: u64) -> Result<NumericDecomposition> {
    decompose_numeric_with(sd, form, ell, &NumericOptions::default())
}

pub fn decompose_numeric_with(
    sd: &SymbolicDecomposition<BigRational>,
    form: &BinaryForm<BigRational>,
    ell: u64,
    opts: &NumericOptions,
) -> Result<NumericDecomposition> {
    let f = Rationals;
    let check = symbolic_lambda(&f, form, &sd.q)?;
    if check.qx != sd.qx || check.t != sd.t || check.dq != sd.dq || check.lambda_inf != sd.lambda_inf {
        return Err(Error::Precondition("symbolic decomposition does not belong to this form".into()));
    }
    let target = Float::pow2(-(ell as i64));
    let cap = opts.max_precision_bits.unwrap_or(u64::MAX).max(1);
    let mut p = (ell + 64).min(cap);
    let mut last = String::from("none");
    for _ in 0..=opts.max_doublings {
        match attempt(sd, form, p) {
            Ok((terms, residual)) => {
                if residual <= target {
                    return Ok(NumericDecomposition { terms, requested_bits: ell, working_precision: p, residual_bound: residual });
                }
                last = residual.to_decimal();
            }
            Err(Error::PrecisionBudget { residual, .. }) => last = residual,
            Err(e) => return Err(e),
        }
        if p >= cap {
            break;
        }
        p = p.saturating_mul(2).min(cap);
    }
    Err(Error::PrecisionBudget { bits: p, residual: last })
}

fn attempt(sd: &SymbolicDecomposition<BigRational>, form: &BinaryForm<BigRational>, p: u64) -> Result<(Vec<NumericTerm>, Float)> {
    let mut terms = Vec::with_capacity(sd.rank);
    if sd.qx.degree().finite().unwrap_or(0) > 0 {
        let roots = roots_approx(&sd.qx, p, 4 * p + 256)?;
        let wp = p + 32;
        let t: Vec<CBall> = sd.t.coeffs().iter().map(|c| CBall::from_rational(c, wp)).collect();
        let dq: Vec<CBall> = sd.dq.coeffs().iter().map(|c| CBall::from_rational(c, wp)).collect();
        for alpha in roots {
            let lambda = horner(&t, &alpha, wp).div(&horner(&dq, &alpha, wp), wp)?;
            terms.push(NumericTerm { lambda, alpha, at_infinity: false });
        }
    }
    if let Some(l) = &sd.lambda_inf {
        terms.push(NumericTerm { lambda: CBall::from_rational(l, p + 32), alpha: CBall::one(), at_infinity: true });
    }
    let residual = residual_norm(form, &terms);
    Ok((terms, residual))
}

fn horner(c: &[CBall], z: &CBall, prec: u64) -> CBall {
    c.iter().rev().fold(CBall::zero(), |acc, k| acc.mul(z, prec).add(k, prec))
}

/// Certified upper bound on `max_i |c_i - c~_i|`, where `c~` are the
/// monomial coefficients of the expansion of the term midpoints.
pub fn residual_norm(form: &BinaryForm<BigRational>, terms: &[NumericTerm]) -> Float {
    residual_norms(form, terms).0
}

/// Bounds on the midpoint residual in the monomial basis `c_i` and in the
/// normalized basis `a_i = c_i / C(D, i)`.
pub fn residual_norms(form: &BinaryForm<BigRational>, terms: &[NumericTerm]) -> (Float, Float) {
    let d = form.degree();
    let mid_bits = terms
        .iter()
        .flat_map(|t| [&t.lambda.re, &t.lambda.im, &t.alpha.re, &t.alpha.im])
        .map(Float::precision)
        .max()
        .unwrap_or(0);
    let prec = mid_bits + 64 + 2 * (64 - (d as u64 + 1).leading_zeros() as u64);
    let mut sums = vec![CBall::zero(); d + 1];
    for term in terms {
        let lambda = term.lambda.midpoint();
        if term.at_infinity {
            sums[d] = sums[d].add(&lambda, prec);
            continue;
        }
        let alpha = term.alpha.midpoint();
        let mut pw = lambda;
        for s in sums.iter_mut() {
            *s = s.add(&pw, prec);
            pw = pw.mul(&alpha, prec);
        }
    }
    let binoms = binomial_row(d);
    let mut worst_c = Float::zero();
    let mut worst_a = Float::zero();
    for (i, s) in sums.iter().enumerate() {
        let dev = CBall::from_rational(&form.normalized()[i], prec).sub(s, prec);
        let c = CBall::real(Float::new(binoms[i].clone(), 0));
        worst_c = worst_c.max(dev.mul(&c, prec).abs_upper());
        worst_a = worst_a.max(dev.abs_upper());
    }
    (worst_c, worst_a)
}
