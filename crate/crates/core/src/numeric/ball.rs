//! Complex disks `{ z : |z - (re + i im)| <= rad }`.
//!
//! Every operation returns a disk containing all results of the exact
//! operation applied to members of the operands. Midpoints are rounded to
//! the requested precision and the rounding error is folded into the
//! radius, which is always rounded upward.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::float::{Float, Round};
use crate::{Error, Result};

/// Mantissa bits kept for radii.
const RAD_PREC: u64 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: Float,
    pub im: Float,
    pub rad: Float,
}

/// Wire form of a ball: exact decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallDoc {
    pub re: String,
    pub im: String,
    pub rad: String,
}

fn up(x: &Float) -> Float {
    x.round(RAD_PREC, Round::Ceil)
}

fn hypot(re: &Float, im: &Float, mode: Round) -> Float {
    re.mul(re).add(&im.mul(im)).sqrt(RAD_PREC, mode).expect("sum of squares is nonnegative")
}

impl CBall {
    pub fn exact(re: Float, im: Float) -> Self {
        CBall { re, im, rad: Float::zero() }
    }

    pub fn real(x: Float) -> Self {
        Self::exact(x, Float::zero())
    }

    pub fn zero() -> Self {
        Self::real(Float::zero())
    }

    pub fn one() -> Self {
        Self::real(Float::one())
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        let mid = Float::from_dyadic(q).unwrap_or_else(|| Float::from_rational(q, prec, Round::Nearest));
        let err = (q - mid.to_rational()).abs();
        let rad = if err.is_zero() { Float::zero() } else { Float::from_rational(&err, RAD_PREC, Round::Ceil) };
        CBall { re: mid, im: Float::zero(), rad }
    }

    /// Rounds exact midpoints and widens the radius accordingly.
    fn finish(re: Float, im: Float, rad: Float, prec: u64) -> Self {
        let r = re.round(prec, Round::Nearest);
        let i = im.round(prec, Round::Nearest);
        let err = re.sub(&r).abs().add(&im.sub(&i).abs());
        CBall { re: r, im: i, rad: up(&rad.add(&err)) }
    }

    pub fn mid_is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Upper bound on `|z|` over the disk.
    pub fn abs_upper(&self) -> Float {
        up(&hypot(&self.re, &self.im, Round::Ceil).add(&self.rad))
    }

    /// Lower bound on `|z|` over the disk, zero when the disk touches zero.
    pub fn abs_lower(&self) -> Float {
        let m = hypot(&self.re, &self.im, Round::Floor).sub(&self.rad);
        if m.is_negative() {
            Float::zero()
        } else {
            m.round(RAD_PREC, Round::Floor)
        }
    }

    /// Upper bound on the distance of any point of the disk from `c`.
    pub fn dist_upper(&self, c: &BigRational) -> Float {
        let d = (self.re.to_rational() - c).abs();
        let dre = Float::from_rational(&d, RAD_PREC, Round::Ceil);
        up(&hypot(&dre, &self.im.abs(), Round::Ceil).add(&self.rad))
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        Self::finish(self.re.add(&o.re), self.im.add(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        Self::finish(self.re.sub(&o.re), self.im.sub(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn neg(&self) -> Self {
        CBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let rad = if self.rad.is_zero() && o.rad.is_zero() {
            Float::zero()
        } else {
            let a = hypot(&self.re, &self.im, Round::Ceil);
            let b = hypot(&o.re, &o.im, Round::Ceil);
            a.mul(&o.rad).add(&b.mul(&self.rad)).add(&self.rad.mul(&o.rad))
        };
        Self::finish(re, im, rad, prec)
    }

    pub fn inv(&self, prec: u64) -> Result<Self> {
        let lower = self.abs_lower();
        if lower.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let den = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let wp = prec + 8;
        let m_re = self.re.div(&den, wp, Round::Nearest)?;
        let m_im = self.im.neg().div(&den, wp, Round::Nearest)?;
        // |1/b - m| = |1 - b m| / |b|
        let res_re = Float::one().sub(&self.re.mul(&m_re).sub(&self.im.mul(&m_im)));
        let res_im = self.re.mul(&m_im).add(&self.im.mul(&m_re)).neg();
        let mid_lower = hypot(&self.re, &self.im, Round::Floor);
        let e_mid = hypot(&res_re, &res_im, Round::Ceil).div(&mid_lower, RAD_PREC, Round::Ceil)?;
        // |1/(b+d) - 1/b| <= r / (|b| (|b| - r))
        let e_rad = if self.rad.is_zero() {
            Float::zero()
        } else {
            self.rad.div(&mid_lower.mul(&lower), RAD_PREC, Round::Ceil)?
        };
        Ok(Self::finish(m_re, m_im, e_mid.add(&e_rad), prec))
    }

    pub fn div(&self, o: &Self, prec: u64) -> Result<Self> {
        Ok(self.mul(&o.inv(prec + 8)?, prec))
    }

    pub fn pow(&self, n: usize, prec: u64) -> Self {
        let mut acc = CBall::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    pub fn scale_rational(&self, q: &BigRational, prec: u64) -> Self {
        self.mul(&CBall::from_rational(q, prec), prec)
    }

    /// Midpoint with zero radius.
    pub fn midpoint(&self) -> Self {
        CBall::exact(self.re.clone(), self.im.clone())
    }

    /// Whether the disks share no point.
    pub fn disjoint(&self, o: &Self) -> bool {
        let dre = self.re.sub(&o.re);
        let dim = self.im.sub(&o.im);
        hypot(&dre, &dim, Round::Floor) > self.rad.add(&o.rad)
    }

    pub fn contains_rational(&self, re: &BigRational, im: &BigRational) -> bool {
        let dre = self.re.to_rational() - re;
        let dim = self.im.to_rational() - im;
        let r = self.rad.to_rational();
        dre.clone() * dre + dim.clone() * dim <= r.clone() * r
    }

    pub fn to_doc(&self) -> BallDoc {
        BallDoc { re: self.re.to_decimal(), im: self.im.to_decimal(), rad: self.rad.to_decimal() }
    }

    /// Reads decimal or `p/q` strings; inexact midpoints are rounded to
    /// `prec` bits and the radius widened to keep the stated disk inside.
    pub fn from_doc(doc: &BallDoc, prec: u64) -> Result<Self> {
        let re = CBall::from_rational(&crate::field::parse_rational(&doc.re)?, prec);
        let im = CBall::from_rational(&crate::field::parse_rational(&doc.im)?, prec);
        let rad_q = crate::field::parse_rational(&doc.rad)?;
        if rad_q.is_negative() {
            return Err(Error::Parse(format!("negative radius {}", doc.rad)));
        }
        let rad = Float::from_rational(&rad_q, RAD_PREC, Round::Ceil);
        Ok(CBall { re: re.re, im: im.re, rad: up(&rad.add(&re.rad).add(&im.rad)) })
    }
}
