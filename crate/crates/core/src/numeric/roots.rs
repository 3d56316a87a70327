//! Certified isolation of the roots of a square-free rational polynomial.
//!
//! Approximations come from Aberth iteration on plain midpoints; each
//! approximation `z_i` is then enclosed in the disk of radius `n |W_i|`,
//! `W_i = p(z_i) / prod_{j != i} (z_i - z_j)`, evaluated in ball
//! arithmetic. When those disks are pairwise disjoint each one holds
//! exactly one root.

use num_rational::BigRational;
use num_traits::Zero;

use super::ball::CBall;
use super::float::{Float, Round};
use crate::euclid::gcd;
use crate::field::Rationals;
use crate::poly::Poly;
use crate::{Error, Result};

#[derive(Clone, Debug)]
struct Cplx {
    re: Float,
    im: Float,
}

impl Cplx {
    fn zero() -> Self {
        Cplx { re: Float::zero(), im: Float::zero() }
    }

    fn one() -> Self {
        Cplx { re: Float::one(), im: Float::zero() }
    }

    fn r(&self, prec: u64) -> Self {
        Cplx { re: self.re.round(prec, Round::Nearest), im: self.im.round(prec, Round::Nearest) }
    }

    fn add(&self, o: &Self) -> Self {
        Cplx { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &Self) -> Self {
        Cplx { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn mul(&self, o: &Self, prec: u64) -> Self {
        Cplx { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }.r(prec)
    }

    fn div(&self, o: &Self, prec: u64) -> Option<Self> {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im)).round(prec + 8, Round::Nearest);
        if den.is_zero() {
            return None;
        }
        let nre = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let nim = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(Cplx { re: nre.div(&den, prec, Round::Nearest).ok()?, im: nim.div(&den, prec, Round::Nearest).ok()? })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `floor(log2 max(|re|, |im|))`, within one bit of `log2 |z|`.
    fn log2(&self) -> Option<i64> {
        match (self.re.log2_floor(), self.im.log2_floor()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
        }
    }

    fn ball(&self) -> CBall {
        CBall::exact(self.re.clone(), self.im.clone())
    }
}

fn log2_abs(q: &BigRational) -> Option<f64> {
    if q.is_zero() {
        return None;
    }
    let f = Float::from_rational(q, 53, Round::Nearest);
    let e = f.log2_floor()?;
    let frac = f.mul_2exp(-e).to_f64().abs();
    Some(e as f64 + frac.log2())
}

/// `log2` of the Fujiwara bound `2 max_k |c_(n-k)|^(1/k)` for monic input.
fn root_bound_log2(p: &Poly<BigRational>) -> f64 {
    let n = p.coeffs().len() - 1;
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        if let Some(l) = log2_abs(&p.coeffs()[n - k]) {
            let l = if k == n { l - 1.0 } else { l };
            best = best.max(l / k as f64);
        }
    }
    if best.is_finite() {
        best + 1.0
    } else {
        0.0
    }
}

/// `(p(z), p'(z))` by Horner on midpoints.
fn eval_with_derivative(coeffs: &[Cplx], z: &Cplx, prec: u64) -> (Cplx, Cplx) {
    let mut p = Cplx::zero();
    let mut dp = Cplx::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, prec).add(&p).r(prec);
        p = p.mul(z, prec).add(c).r(prec);
    }
    (p, dp)
}

/// One Aberth sweep; returns the largest `log2 |correction|`.
fn aberth_sweep(coeffs: &[Cplx], z: &mut [Cplx], prec: u64) -> Option<i64> {
    let n = z.len();
    let mut worst: Option<i64> = None;
    for i in 0..n {
        let (p, dp) = eval_with_derivative(coeffs, &z[i], prec);
        if p.is_zero() {
            continue;
        }
        let mut s = Cplx::zero();
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = z[i].sub(&z[j]).r(prec);
            if let Some(inv) = Cplx::one().div(&d, prec) {
                s = s.add(&inv).r(prec);
            }
        }
        let den = dp.sub(&p.mul(&s, prec)).r(prec);
        let Some(corr) = p.div(&den, prec) else {
            continue;
        };
        z[i] = z[i].sub(&corr).r(prec);
        let l = corr.log2();
        worst = match (worst, l) {
            (None, l) => l,
            (Some(w), Some(l)) => Some(w.max(l)),
            (w, None) => w,
        };
    }
    worst
}

fn rational_balls(p: &Poly<BigRational>, prec: u64) -> Vec<CBall> {
    p.coeffs().iter().map(|c| CBall::from_rational(c, prec)).collect()
}

fn ball_horner(coeffs: &[CBall], z: &CBall, prec: u64) -> CBall {
    coeffs.iter().rev().fold(CBall::zero(), |acc, c| acc.mul(z, prec).add(c, prec))
}

/// Inclusion radii `n |W_i|` when the resulting disks are pairwise
/// disjoint.
fn certify(p: &Poly<BigRational>, z: &[Cplx], prec: u64) -> Option<Vec<Float>> {
    let n = z.len();
    let coeffs = rational_balls(p, prec);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z[i].ball();
        let val = ball_horner(&coeffs, &zi, prec);
        let mut den = CBall::one();
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                den = den.mul(&zi.sub(&zj.ball(), prec), prec);
            }
        }
        let w = val.div(&den, prec).ok()?;
        let r = w.abs_upper().mul(&Float::from_i64(n as i64)).round(32, Round::Ceil);
        radii.push(r);
    }
    let balls: Vec<CBall> = z.iter().zip(&radii).map(|(c, r)| CBall { re: c.re.clone(), im: c.im.clone(), rad: r.clone() }).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !balls[i].disjoint(&balls[j]) {
                return None;
            }
        }
    }
    Some(radii)
}

/// Pairwise disjoint disks, one around each root of the square-free `p`,
/// each of radius at most `2^-bits`. Working precision doubles from 64
/// bits up to `max_prec`.
pub fn roots_approx(p: &Poly<BigRational>, bits: u64, max_prec: u64) -> Result<Vec<CBall>> {
    let f = Rationals;
    let n = p.degree().finite().ok_or(Error::ZeroForm)?;
    if n == 0 {
        return Err(Error::InvalidArgument("a constant has no roots".into()));
    }
    if gcd(&f, p, &p.derivative(&f))?.degree() != 0 {
        return Err(Error::NotSquareFree);
    }
    let p = p.monic(&f);
    let rlog = root_bound_log2(&p);
    let rb = rlog.max(0.0).ceil() as u64;
    let radius = 2f64.powf(rlog.clamp(-900.0, 900.0));
    let mut z: Vec<Cplx> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            let to_float = |x: f64| {
                let (m, e) = decompose_f64(x);
                Float::new(m.into(), e)
            };
            Cplx { re: to_float(radius * t.cos()), im: to_float(radius * t.sin()) }
        })
        .collect();

    let target = Float::pow2(-(bits as i64));
    let mut prec = 64u64.max(rb + 32);
    let mut first = true;
    loop {
        let coeffs: Vec<Cplx> = p
            .coeffs()
            .iter()
            .map(|c| Cplx { re: Float::from_rational(c, prec + 16, Round::Nearest), im: Float::zero() })
            .collect();
        let cap = if first { 200 + 20 * n } else { 30 };
        let stop = rb as i64 - prec as i64 + 8;
        for _ in 0..cap {
            match aberth_sweep(&coeffs, &mut z, prec) {
                Some(w) if w > stop => {}
                _ => break,
            }
        }
        first = false;
        if let Some(radii) = certify(&p, &z, prec + 16) {
            if radii.iter().all(|r| *r <= target) {
                return Ok(z.iter().zip(radii).map(|(c, r)| CBall { re: c.re.clone(), im: c.im.clone(), rad: r }).collect());
            }
        }
        if prec >= max_prec {
            return Err(Error::PrecisionBudget { bits: prec, residual: "root isolation did not certify".into() });
        }
        prec = (2 * prec).max(bits + rb + 32).min(max_prec);
    }
}

/// `(m, e)` with `x = m * 2^e` exactly.
fn decompose_f64(x: f64) -> (i64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & 0xfffffffffffff) as i64;
    if exp == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1 << 52)), exp - 1075)
    }
}
