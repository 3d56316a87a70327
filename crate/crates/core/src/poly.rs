//! Dense univariate polynomials.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::{Error, Result};

/// Degree of a polynomial, with `NegInf` for the zero polynomial.
///
/// The derived ordering places `NegInf` below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Fin(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Fin(d) => Some(d),
        }
    }

    /// Degree as a signed integer with `-1` standing in for `-inf`.
    /// Only safe where the caller adds at least one.
    pub fn to_i64(self) -> i64 {
        match self {
            Degree::NegInf => -1,
            Degree::Fin(d) => d as i64,
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }

    pub fn plus(self, k: usize) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Fin(d) => Degree::Fin(d + k),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Fin(d) => write!(f, "{d}"),
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Fin(*other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        Some(self.cmp(&Degree::Fin(*other)))
    }
}

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// Trailing zeros are never stored, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + PartialEq> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = T>>(f: &F, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s<F: Field<Elem = T>>(f: &F, coeffs: &[i64]) -> Self {
        Self::from_coeffs(f, coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn constant<F: Field<Elem = T>>(f: &F, c: T) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one<F: Field<Elem = T>>(f: &F) -> Self {
        Poly { coeffs: vec![f.one()] }
    }

    /// `c * x^k`
    pub fn monomial<F: Field<Elem = T>>(f: &F, c: T, k: usize) -> Self {
        if f.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![f.zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Fin(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = T>>(&self, f: &F, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn neg<F: Field<Elem = T>>(&self, f: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, c: &T) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| f.mul(x, c)).collect() }
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(f, f.mul_slices(&self.coeffs, &other.coeffs))
    }

    /// Multiplication by `x^k`.
    pub fn shl<F: Field<Elem = T>>(&self, f: &F, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![f.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact quotient by `x^k`, dropping the low coefficients.
    pub fn shr(&self, k: usize) -> Self {
        Poly { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Reduction modulo `x^n`.
    pub fn truncate<F: Field<Elem = T>>(&self, f: &F, n: usize) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().take(n).cloned().collect())
    }

    /// `x^n * p(1/x)`; requires `n >= deg p`.
    pub fn reverse<F: Field<Elem = T>>(&self, f: &F, n: usize) -> Self {
        debug_assert!(self.degree() <= Degree::Fin(n) || self.is_zero());
        let mut coeffs: Vec<T> = (0..=n).map(|i| self.coeff(f, i)).collect();
        coeffs.reverse();
        Self::from_coeffs(f, coeffs)
    }

    pub fn derivative<F: Field<Elem = T>>(&self, f: &F) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, x: &T) -> T {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Scaled copy with leading coefficient one. The zero polynomial stays
    /// zero.
    pub fn monic<F: Field<Elem = T>>(&self, f: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = f.inv(l).expect("leading coefficient is nonzero");
                self.scale(f, &inv)
            }
        }
    }

    /// Power series inverse modulo `x^n`; requires a nonzero constant term.
    pub fn inv_series<F: Field<Elem = T>>(&self, f: &F, n: usize) -> Result<Self> {
        let c0 = self.coeffs.first().ok_or(Error::ZeroDivisor)?;
        let inv0 = f.inv(c0).ok_or(Error::ZeroDivisor)?;
        let mut g = Self::constant(f, inv0);
        let mut prec = 1;
        let two = Self::constant(f, f.from_i64(2));
        while prec < n {
            prec = (2 * prec).min(n);
            // g <- g (2 - s g) mod x^prec
            let sg = self.truncate(f, prec).mul(f, &g).truncate(f, prec);
            g = g.mul(f, &two.sub(f, &sg)).truncate(f, prec);
        }
        Ok(g.truncate(f, n))
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().finite().ok_or(Error::ZeroDivisor)?;
        let Some(n) = self.degree().finite() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let m = n - dd;
        if m < 64 || dd < 16 {
            return Ok(self.div_rem_classical(f, d));
        }
        let rev_a = self.reverse(f, n).truncate(f, m + 1);
        let rev_d = d.reverse(f, dd);
        let rev_q = rev_a.mul(f, &rev_d.inv_series(f, m + 1)?).truncate(f, m + 1);
        let q = rev_q.reverse(f, m);
        let r = self.sub(f, &q.mul(f, d));
        Ok((q, r))
    }

    fn div_rem_classical<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(&d.coeffs[dd]).expect("leading coefficient is nonzero");
        let mut r = self.coeffs.clone();
        let m = r.len() - 1 - dd;
        let mut q = vec![f.zero(); m + 1];
        for k in (0..=m).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&c) {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&c, dj));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(f, q), Self::from_coeffs(f, r))
    }

    pub fn quo<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> Result<Self> {
        Ok(self.div_rem(f, d)?.0)
    }

    pub fn rem<F: Field<Elem = T>>(&self, f: &F, d: &Self) -> Result<Self> {
        Ok(self.div_rem(f, d)?.1)
    }

    pub fn format<F: Field<Elem = T>>(&self, f: &F) -> Vec<String> {
        self.coeffs.iter().map(|c| f.format(c)).collect()
    }

    /// Human readable rendering, highest degree first.
    pub fn display<F: Field<Elem = T>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let c = f.format(c);
            parts.push(match i {
                0 => c,
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            });
        }
        parts.join(" + ")
    }
}

const TREE_CUTOFF: usize = 32;

/// Subproduct tree over the points; `levels[0]` holds the linear factors.
struct ProductTree<T> {
    levels: Vec<Vec<Poly<T>>>,
}

impl<T: Clone + PartialEq> ProductTree<T> {
    fn build<F: Field<Elem = T>>(f: &F, pts: &[T]) -> Self {
        let leaves: Vec<Poly<T>> = pts.iter().map(|p| Poly::from_coeffs(f, vec![f.neg(p), f.one()])).collect();
        let mut levels = vec![leaves];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next = prev
                .chunks(2)
                .map(|c| if c.len() == 2 { c[0].mul(f, &c[1]) } else { c[0].clone() })
                .collect();
            levels.push(next);
        }
        ProductTree { levels }
    }

    fn root(&self) -> &Poly<T> {
        &self.levels.last().unwrap()[0]
    }

    fn eval_down<F: Field<Elem = T>>(&self, f: &F, p: &Poly<T>, out: &mut Vec<T>) -> Result<()> {
        let top = self.levels.len() - 1;
        self.eval_node(f, &p.rem(f, self.root())?, top, 0, out)
    }

    fn eval_node<F: Field<Elem = T>>(&self, f: &F, p: &Poly<T>, level: usize, idx: usize, out: &mut Vec<T>) -> Result<()> {
        if level == 0 {
            out.push(p.coeff(f, 0));
            return Ok(());
        }
        let below = &self.levels[level - 1];
        for child in [2 * idx, 2 * idx + 1] {
            if child < below.len() {
                let r = p.rem(f, &below[child])?;
                self.eval_node(f, &r, level - 1, child, out)?;
            }
        }
        Ok(())
    }

    /// `sum_i w_i * prod_{j != i} (x - x_j)` combined bottom up.
    fn combine<F: Field<Elem = T>>(&self, f: &F, weights: &[T]) -> Poly<T> {
        let mut cur: Vec<Poly<T>> = weights.iter().map(|w| Poly::constant(f, w.clone())).collect();
        for level in 0..self.levels.len() - 1 {
            let nodes = &self.levels[level];
            cur = cur
                .chunks(2)
                .enumerate()
                .map(|(k, c)| {
                    if c.len() == 2 {
                        c[0].mul(f, &nodes[2 * k + 1]).add(f, &c[1].mul(f, &nodes[2 * k]))
                    } else {
                        c[0].clone()
                    }
                })
                .collect();
        }
        cur.pop().unwrap_or_else(Poly::zero)
    }
}

/// Values of `p` at every point, via a subproduct tree for long point lists.
pub fn multipoint_eval<F: Field>(f: &F, p: &Poly<F::Elem>, pts: &[F::Elem]) -> Vec<F::Elem> {
    if pts.len() <= TREE_CUTOFF {
        return pts.iter().map(|x| p.eval(f, x)).collect();
    }
    let tree = ProductTree::build(f, pts);
    let mut out = Vec::with_capacity(pts.len());
    tree.eval_down(f, p, &mut out).expect("tree nodes are monic");
    out
}

/// Unique polynomial of degree `< pts.len()` through the given pairs.
pub fn interpolate<F: Field>(f: &F, pts: &[(F::Elem, F::Elem)]) -> Result<Poly<F::Elem>> {
    if pts.is_empty() {
        return Ok(Poly::zero());
    }
    let xs: Vec<F::Elem> = pts.iter().map(|(x, _)| x.clone()).collect();
    let tree = ProductTree::build(f, &xs);
    let dm = tree.root().derivative(f);
    let denoms = multipoint_eval(f, &dm, &xs);
    let mut weights = Vec::with_capacity(pts.len());
    for ((x, y), d) in pts.iter().zip(&denoms) {
        let inv = f.inv(d).ok_or_else(|| Error::DuplicatePoint(f.format(x)))?;
        weights.push(f.mul(y, &inv));
    }
    Ok(tree.combine(f, &weights))
}
