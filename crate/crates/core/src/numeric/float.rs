//! Arbitrary precision binary floating point numbers `man * 2^exp`.
//!
//! Addition, subtraction and multiplication are exact; precision is only
//! lost through an explicit [`Float::round`] or an inexact operation such
//! as division, each of which takes a precision and a rounding direction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
    /// To nearest, ties to even.
    Nearest,
}

/// `man * 2^exp`, kept with an odd mantissa (or zero with `exp = 0`) so
/// that equal values have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Self {
        Float { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Float { man: BigInt::one(), exp: 0 }
    }

    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Self::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        Float { man: man >> tz, exp: exp + tz as i64 }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Self {
        Float { man: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Bits in the mantissa.
    pub fn precision(&self) -> u64 {
        self.man.bits()
    }

    /// `floor(log2 |x|)`, `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.man.bits() as i64 - 1 + self.exp)
    }

    pub fn neg(&self) -> Self {
        Float { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Float { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Float { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &o.man << (o.exp - e) as usize;
        Self::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Float { man: &self.man * &o.man, exp: self.exp + o.exp }
    }

    pub fn max(self, o: Self) -> Self {
        if self >= o {
            self
        } else {
            o
        }
    }

    /// Rounded to at most `prec` mantissa bits.
    pub fn round(&self, prec: u64, mode: Round) -> Self {
        let neg = self.man.is_negative();
        round_mag(self.man.magnitude(), self.exp, false, neg, prec, mode)
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u64, mode: Round) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let neg = num.is_negative() != den.is_negative();
        let (n, d) = (num.magnitude(), den.magnitude());
        // at least prec + 2 quotient bits
        let k = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (nn, dd) = if k >= 0 { (n << k as usize, d.clone()) } else { (n.clone(), d << (-k) as usize) };
        let q = &nn / &dd;
        let sticky = !(&nn % &dd).is_zero();
        Ok(round_mag(&q, -k, sticky, neg, prec, mode))
    }

    pub fn from_rational(q: &BigRational, prec: u64, mode: Round) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec, mode).expect("rational denominators are nonzero")
    }

    pub fn div(&self, o: &Self, prec: u64, mode: Round) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let mut r = Self::from_ratio(&self.man, &o.man, prec, mode)?;
        if !r.is_zero() {
            r.exp += self.exp - o.exp;
        }
        Ok(r)
    }

    /// Square root of a nonnegative value, rounded to `prec` bits.
    pub fn sqrt(&self, prec: u64, mode: Round) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative number".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mag = self.man.magnitude();
        let mut shift = (2 * prec as i64 + 4 - mag.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let n = mag << shift as usize;
        let s = n.sqrt();
        let exact = &s * &s == n;
        Ok(round_mag(&s, (self.exp - shift) / 2, !exact, false, prec, mode))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Exact value when `q` has a power-of-two denominator.
    pub fn from_dyadic(q: &BigRational) -> Option<Self> {
        let d = q.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        (d >> tz as usize).is_one().then(|| Self::new(q.numer().clone(), -(tz as i64)))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (&self.man >> drop as usize).to_f64().unwrap_or(0.0);
        let e = (self.exp + drop).clamp(-2200, 2200) as i32;
        top * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// Exact decimal expansion.
    pub fn to_decimal(&self) -> String {
        if self.exp >= 0 {
            return (&self.man << self.exp as usize).to_string();
        }
        let n = (-self.exp) as usize;
        let digits = (self.man.abs() * num_traits::pow(BigInt::from(5u32), n)).to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (int, frac) = if digits.len() > n {
            let (a, b) = digits.split_at(digits.len() - n);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{}{digits}", "0".repeat(n - digits.len())))
        };
        format!("{sign}{int}.{frac}")
    }

    /// Parses an exact decimal or `p/q`; inexact inputs are rounded in the
    /// given direction.
    pub fn parse(s: &str, prec: u64, mode: Round) -> Result<Self> {
        let q = crate::field::parse_rational(s)?;
        Ok(Self::from_dyadic(&q).unwrap_or_else(|| Self::from_rational(&q, prec, mode)))
    }
}

fn round_mag(mag: &BigUint, exp: i64, sticky: bool, neg: bool, prec: u64, mode: Round) -> Float {
    let prec = prec.max(1);
    let bits = mag.bits();
    if bits == 0 && !sticky {
        return Float::zero();
    }
    let drop = bits.saturating_sub(prec);
    let mut t: BigUint = mag >> drop as usize;
    let low_nonzero = drop > 0 && mag.trailing_zeros().is_some_and(|z| z < drop);
    let inexact = low_nonzero || sticky;
    if inexact {
        let away = match mode {
            Round::Floor => neg,
            Round::Ceil => !neg,
            Round::Nearest => {
                if drop == 0 {
                    false
                } else {
                    let guard = mag.bit(drop - 1);
                    let rest = sticky || mag.trailing_zeros().is_some_and(|z| z < drop - 1);
                    guard && (rest || t.bit(0))
                }
            }
        };
        if away {
            t += 1u32;
        }
    }
    let man = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, t);
    Float::new(man, exp + drop as i64)
}

impl Ord for Float {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.sub(o).man.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        assert_eq!(Float::new(BigInt::from(12), 0), Float::new(BigInt::from(3), 2));
        assert_eq!(Float::from_i64(0), Float::zero());
    }

    #[test]
    fn directed_rounding_of_thirds() {
        let lo = Float::from_rational(&q(1, 3), 10, Round::Floor);
        let hi = Float::from_rational(&q(1, 3), 10, Round::Ceil);
        assert!(lo.to_rational() < q(1, 3) && q(1, 3) < hi.to_rational());
        assert_eq!(hi.sub(&lo), Float::pow2(-11));
        let nlo = Float::from_rational(&q(-1, 3), 10, Round::Floor);
        assert_eq!(nlo, hi.neg());
    }

    #[test]
    fn nearest_ties_to_even() {
        // 0b1011 at 3 bits: halfway between 0b101 and 0b110 -> 0b110
        assert_eq!(Float::from_i64(11).round(3, Round::Nearest), Float::from_i64(12));
        // 0b1001 at 3 bits -> 0b100 (even)
        assert_eq!(Float::from_i64(9).round(3, Round::Nearest), Float::from_i64(8));
    }

    #[test]
    fn sqrt_bounds() {
        let two = Float::from_i64(2);
        let lo = two.sqrt(64, Round::Floor).unwrap();
        let hi = two.sqrt(64, Round::Ceil).unwrap();
        assert!(lo.mul(&lo) < two && hi.mul(&hi) > two);
        assert_eq!(Float::from_i64(9).sqrt(8, Round::Ceil).unwrap(), Float::from_i64(3));
        assert_eq!(Float::pow2(-6).sqrt(8, Round::Floor).unwrap(), Float::pow2(-3));
    }

    #[test]
    fn decimal_output_is_exact() {
        assert_eq!(Float::new(BigInt::from(-3), -3).to_decimal(), "-0.375");
        assert_eq!(Float::from_i64(40).to_decimal(), "40");
        assert_eq!(Float::pow2(-1).to_decimal(), "0.5");
        assert_eq!(Float::parse("-0.375", 53, Round::Nearest).unwrap(), Float::new(BigInt::from(-3), -3));
    }

    proptest! {
        #[test]
        fn division_brackets_quotient(a in -10_000i64..10_000, b in 1i64..10_000, prec in 2u64..80) {
            let fa = Float::from_i64(a);
            let fb = Float::from_i64(b);
            let lo = fa.div(&fb, prec, Round::Floor).unwrap();
            let hi = fa.div(&fb, prec, Round::Ceil).unwrap();
            let exact = q(a, b);
            prop_assert!(lo.to_rational() <= exact && exact <= hi.to_rational());
            prop_assert!(lo.precision() <= prec && hi.precision() <= prec);
            let near = fa.div(&fb, prec, Round::Nearest).unwrap();
            prop_assert!(near == lo || near == hi);
        }

        #[test]
        fn exact_ring_ops(a in any::<i32>(), b in any::<i32>(), ea in -40i64..40, eb in -40i64..40) {
            let x = Float::new(BigInt::from(a), ea);
            let y = Float::new(BigInt::from(b), eb);
            prop_assert_eq!(x.add(&y).to_rational(), x.to_rational() + y.to_rational());
            prop_assert_eq!(x.mul(&y).to_rational(), x.to_rational() * y.to_rational());
            prop_assert_eq!(x.cmp(&y), x.to_rational().cmp(&y.to_rational()));
        }
    }
}
