//! Coefficient fields.
//!
//! Every algorithm in this crate is generic over a [`Field`]: a context
//! object that owns whatever is needed to do arithmetic (the modulus of a
//! prime field, nothing at all for the rationals) and hands out plain
//! element values. Passing the context explicitly keeps the modulus of
//! [`PrimeField`] a runtime choice.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use rug::integer::Order;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::ntt;
use crate::{Error, Result};

/// Field arithmetic through an explicit context.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes in
    /// this field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> BigUint;

    /// Wire format: `"p/q"` or `"p"` for rationals, a reduced residue for
    /// prime fields.
    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
            .ok_or_else(|| Error::Parse(format!("{s:?} has a denominator that vanishes in {self:?}")))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::ZeroDivisor)?;
        Ok(self.mul(a, &inv))
    }

    /// Dense product of two coefficient slices (low to high). Fields with a
    /// fast transform override this; the default is Karatsuba.
    fn mul_slices(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        karatsuba(self, a, b)
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int_digits.is_empty() {
            return Err(err());
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || !int_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac}");
        let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err())? };
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The field of rational numbers with arbitrary precision numerators and
/// denominators. Values are always reduced with a positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return a + b;
        }
        from_gmp(to_gmp(a) + to_gmp(b))
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return a - b;
        }
        from_gmp(to_gmp(a) - to_gmp(b))
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return a * b;
        }
        from_gmp(to_gmp(a) * to_gmp(b))
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
}

fn to_gmp_int(n: &BigInt) -> rug::Integer {
    let (sign, digits) = n.to_u64_digits();
    let i = rug::Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -i
    } else {
        i
    }
}

fn from_gmp_int(i: &rug::Integer) -> BigInt {
    let mag = BigUint::new(i.to_digits::<u32>(Order::Lsf));
    let sign = match i.cmp0() {
        std::cmp::Ordering::Less => Sign::Minus,
        std::cmp::Ordering::Equal => Sign::NoSign,
        std::cmp::Ordering::Greater => Sign::Plus,
    };
    BigInt::from_biguint(sign, mag)
}

fn to_gmp(q: &BigRational) -> rug::Rational {
    // SAFETY: a BigRational is reduced with a positive denominator.
    unsafe { rug::Rational::from_canonical(to_gmp_int(q.numer()), to_gmp_int(q.denom())) }
}

fn from_gmp(q: rug::Rational) -> BigRational {
    let (n, d) = q.into_numer_denom();
    BigRational::new_raw(from_gmp_int(&n), from_gmp_int(&d))
}

/// The Mersenne prime 2^61 - 1 used by the benchmarks.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Z/pZ for a prime `p < 2^63`.
///
/// Only meant for the symbolic pipeline and for benchmarking arithmetic
/// operation counts; forms of degree `D` require `p > D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidArgument(format!("modulus {p} must be below 2^63")));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_wide(&self, x: u128) -> u64 {
        if self.p == MERSENNE_61 {
            // x < 2^126: fold twice.
            let lo = (x as u64) & MERSENNE_61;
            let hi = x >> 61;
            let s = lo as u128 + hi;
            let lo2 = (s as u64) & MERSENNE_61;
            let mut r = lo2 + (s >> 61) as u64;
            if r >= MERSENNE_61 {
                r -= MERSENNE_61;
            }
            r
        } else {
            (x % self.p as u128) as u64
        }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.reduce_wide(r as u128 * b as u128);
            }
            b = self.reduce_wide(b as u128 * b as u128);
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_wide(*a as u128 * *b as u128)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = (n as i128).rem_euclid(self.p as i128);
        r as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("reduced residue fits in u64")
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn mul_slices(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len().min(b.len()) <= 48 {
            let mut out = vec![0u64; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = self.add(&out[i + j], &self.mul(x, y));
                }
            }
            return out;
        }
        ntt::multiply_mod(a, b, self.p)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const KARATSUBA_CUTOFF: usize = 32;

fn schoolbook<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Karatsuba multiplication over any field.
pub fn karatsuba<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        return schoolbook(f, a, b);
    }
    // Unbalanced operands: cut the longer one into chunks of the shorter.
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if long.len() >= 2 * short.len() {
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (c, chunk) in long.chunks(short.len()).enumerate() {
            let part = karatsuba(f, chunk, short);
            let off = c * short.len();
            for (k, v) in part.into_iter().enumerate() {
                out[off + k] = f.add(&out[off + k], &v);
            }
        }
        return out;
    }
    let half = long.len().div_ceil(2);
    let (a0, a1) = long.split_at(half);
    let (b0, b1) = if short.len() > half { short.split_at(half) } else { (short, &short[short.len()..]) };
    let z0 = karatsuba(f, a0, b0);
    let z2 = karatsuba(f, a1, b1);
    let sum = |x: &[F::Elem], y: &[F::Elem]| -> Vec<F::Elem> {
        (0..x.len().max(y.len()))
            .map(|i| match (x.get(i), y.get(i)) {
                (Some(p), Some(q)) => f.add(p, q),
                (Some(p), None) | (None, Some(p)) => p.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    };
    let z1 = karatsuba(f, &sum(a0, a1), &sum(b0, b1));
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (k, v) in z0.iter().enumerate() {
        out[k] = f.add(&out[k], v);
    }
    for (k, v) in z2.iter().enumerate() {
        out[k + 2 * half] = f.add(&out[k + 2 * half], v);
    }
    for (k, v) in z1.iter().enumerate() {
        let mut m = v.clone();
        if let Some(x) = z0.get(k) {
            m = f.sub(&m, x);
        }
        if let Some(x) = z2.get(k) {
            m = f.sub(&m, x);
        }
        if k + half < out.len() {
            out[k + half] = f.add(&out[k + half], &m);
        } else {
            debug_assert!(f.is_zero(&m));
        }
    }
    out
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All binomials `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
        row.push(c.clone());
    }
    row
}
