//! Binary forms and homogeneous bivariate polynomials.

use std::fmt;


use crate::euclid;
use crate::field::{binomial_row, Field};
use crate::poly::Poly;
use crate::{Error, Result};

/// How the coefficients of a form were supplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Monomial coefficients `c_i` of `x^i y^(D-i)`.
    Raw,
    /// Normalized coefficients `a_i = c_i / C(D,i)`.
    Normalized,
}

/// `f(x,y) = sum_i C(D,i) a_i x^i y^(D-i)`, never the zero form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<T> {
    a: Vec<T>,
    provenance: Provenance,
}

impl<T: Clone + PartialEq> BinaryForm<T> {
    pub fn from_normalized<F: Field<Elem = T>>(f: &F, a: Vec<T>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidArgument(format!("a form of positive degree needs at least 2 coefficients, got {}", a.len())));
        }
        if a.iter().all(|x| f.is_zero(x)) {
            return Err(Error::ZeroForm);
        }
        check_characteristic(f, a.len() - 1)?;
        Ok(BinaryForm { a, provenance: Provenance::Normalized })
    }

    pub fn from_normalized_i64<F: Field<Elem = T>>(f: &F, a: &[i64]) -> Result<Self> {
        Self::from_normalized(f, a.iter().map(|&x| f.from_i64(x)).collect())
    }

    /// From monomial coefficients `c_i`.
    pub fn from_coeffs<F: Field<Elem = T>>(f: &F, c: Vec<T>) -> Result<Self> {
        if c.len() < 2 {
            return Err(Error::InvalidArgument(format!("a form of positive degree needs at least 2 coefficients, got {}", c.len())));
        }
        let d = c.len() - 1;
        check_characteristic(f, d)?;
        let binoms = binomial_row(d);
        let a = c
            .iter()
            .zip(&binoms)
            .map(|(ci, b)| f.div(ci, &f.from_bigint(b)))
            .collect::<Result<Vec<_>>>()?;
        let mut form = Self::from_normalized(f, a)?;
        form.provenance = Provenance::Raw;
        Ok(form)
    }

    pub fn from_coeffs_i64<F: Field<Elem = T>>(f: &F, c: &[i64]) -> Result<Self> {
        Self::from_coeffs(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn normalized(&self) -> &[T] {
        &self.a
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Monomial coefficients `c_i = C(D,i) a_i`.
    pub fn coeffs<F: Field<Elem = T>>(&self, f: &F) -> Vec<T> {
        let binoms = binomial_row(self.degree());
        self.a.iter().zip(&binoms).map(|(ai, b)| f.mul(ai, &f.from_bigint(b))).collect()
    }

    /// `A = sum a_i x^i`.
    pub fn a_poly<F: Field<Elem = T>>(&self, f: &F) -> Poly<T> {
        Poly::from_coeffs(f, self.a.clone())
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, x: &T, y: &T) -> T {
        BivariatePoly::new(self.coeffs(f)).eval(f, x, y)
    }
}

fn check_characteristic<F: Field>(f: &F, d: usize) -> Result<()> {
    let p = f.characteristic();
    if p != num_bigint::BigUint::from(0u32) && p <= num_bigint::BigUint::from(d) {
        return Err(Error::InvalidArgument(format!("characteristic {p} must exceed the degree {d}")));
    }
    Ok(())
}

/// `P_v = sum_i v_i x^i y^(n-i)` with an explicit homogeneous degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariatePoly<T> {
    v: Vec<T>,
}

impl<T: Clone + PartialEq> BivariatePoly<T> {
    /// Degree is `v.len() - 1`; leading zeros are meaningful (powers of `y`).
    pub fn new(v: Vec<T>) -> Self {
        assert!(!v.is_empty(), "a homogeneous polynomial needs at least one coefficient");
        BivariatePoly { v }
    }

    pub fn from_i64s<F: Field<Elem = T>>(f: &F, v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| f.from_i64(x)).collect())
    }

    /// `y^n p(x/y)`; requires `deg p <= n`.
    pub fn homogenize<F: Field<Elem = T>>(f: &F, p: &Poly<T>, n: usize) -> Result<Self> {
        if p.degree() > n {
            return Err(Error::InvalidArgument(format!("cannot homogenize degree {} to {n}", p.degree())));
        }
        Ok(Self::new((0..=n).map(|i| p.coeff(f, i)).collect()))
    }

    /// `x^n p(y/x)`, so the coefficient of `x^i y^(n-i)` is `p_(n-i)`.
    pub fn homogenize_reversed<F: Field<Elem = T>>(f: &F, p: &Poly<T>, n: usize) -> Result<Self> {
        let mut h = Self::homogenize(f, p, n)?;
        h.v.reverse();
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.v.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.v
    }

    pub fn is_zero<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.v.iter().all(|c| f.is_zero(c))
    }

    /// `P(x, 1)`.
    pub fn dehomogenize<F: Field<Elem = T>>(&self, f: &F) -> Poly<T> {
        Poly::from_coeffs(f, self.v.clone())
    }

    /// Multiplicity of `y` as a factor; `None` for the zero polynomial.
    pub fn y_valuation<F: Field<Elem = T>>(&self, f: &F) -> Option<usize> {
        self.v.iter().rev().position(|c| !f.is_zero(c))
    }

    pub fn x_valuation<F: Field<Elem = T>>(&self, f: &F) -> Option<usize> {
        self.v.iter().position(|c| !f.is_zero(c))
    }

    pub fn eval<F: Field<Elem = T>>(&self, f: &F, x: &T, y: &T) -> T {
        // Horner in x with y powers accumulated from the top.
        let mut acc = f.zero();
        let mut ypow = f.one();
        for c in self.v.iter().rev() {
            acc = f.add(&f.mul(&acc, x), &f.mul(c, &ypow));
            ypow = f.mul(&ypow, y);
        }
        acc
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), got: other.degree() });
        }
        Ok(Self::new(self.v.iter().zip(&other.v).map(|(a, b)| f.add(a, b)).collect()))
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, c: &T) -> Self {
        Self::new(self.v.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let mut out = f.mul_slices(&self.v, &other.v);
        out.resize(self.v.len() + other.v.len() - 1, f.zero());
        Self::new(out)
    }

    pub fn mul_x_pow<F: Field<Elem = T>>(&self, f: &F, k: usize) -> Self {
        let mut v = vec![f.zero(); k];
        v.extend(self.v.iter().cloned());
        Self::new(v)
    }

    pub fn mul_y_pow<F: Field<Elem = T>>(&self, f: &F, k: usize) -> Self {
        let mut v = self.v.clone();
        v.resize(v.len() + k, f.zero());
        Self::new(v)
    }

    /// Exact quotient by `y`; requires `y | P` and degree at least one.
    pub fn div_y<F: Field<Elem = T>>(&self, f: &F) -> Result<Self> {
        if self.degree() == 0 || !f.is_zero(self.v.last().unwrap()) {
            return Err(Error::Precondition("y does not divide the polynomial".into()));
        }
        Ok(Self::new(self.v[..self.v.len() - 1].to_vec()))
    }

    /// Scaled so that the highest-index nonzero coefficient is one, which is
    /// monic in `x` whenever the `x^n` coefficient is nonzero.
    pub fn canonical<F: Field<Elem = T>>(&self, f: &F) -> Self {
        match self.v.iter().rev().find(|c| !f.is_zero(c)) {
            None => self.clone(),
            Some(l) => self.scale(f, &f.inv(l).expect("nonzero")),
        }
    }

    /// Equality up to a nonzero scalar.
    pub fn projectively_eq<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> bool {
        self.degree() == other.degree() && self.canonical(f) == other.canonical(f)
    }

    /// No repeated projective root: `y^2` does not divide `Q` and
    /// `gcd(Q(x,1), Q'(x,1))` is constant.
    pub fn is_squarefree<F: Field<Elem = T>>(&self, f: &F) -> Result<bool> {
        let Some(yv) = self.y_valuation(f) else {
            return Err(Error::ZeroForm);
        };
        if yv >= 2 {
            return Ok(false);
        }
        let qx = self.dehomogenize(f);
        let g = euclid::gcd(f, &qx, &qx.derivative(f))?;
        Ok(g.degree() == 0)
    }

    pub fn format<F: Field<Elem = T>>(&self, f: &F) -> Vec<String> {
        self.v.iter().map(|c| f.format(c)).collect()
    }

    pub fn display<F: Field<Elem = T>>(&self, f: &F) -> String {
        let n = self.degree();
        let mut parts = Vec::new();
        for (i, c) in self.v.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = |var: &str, e: usize| match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let m: Vec<String> = [mono("x", i), mono("y", n - i)].into_iter().filter(|s| !s.is_empty()).collect();
            let c = f.format(c);
            parts.push(if m.is_empty() { c } else { format!("({c})*{}", m.join("*")) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<T: fmt::Display> fmt::Display for BivariatePoly<T> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.v.iter().map(|c| c.to_string()).collect();
        write!(fm, "[{}]", parts.join(", "))
    }
}

/// Exact `C(D, i)` as a field element.
pub fn binomial_in<F: Field>(f: &F, d: usize, i: usize) -> F::Elem {
    f.from_bigint(&crate::field::binomial(d, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn bp(v: &[i64]) -> BivariatePoly<BigRational> {
        BivariatePoly::from_i64s(&Rationals, v)
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(BinaryForm::from_normalized_i64(&Rationals, &[0, 0, 0]), Err(Error::ZeroForm));
        assert!(BinaryForm::from_normalized_i64(&Rationals, &[1]).is_err());
    }

    #[test]
    fn small_characteristic_rejected() {
        let f = PrimeField::new(5).unwrap();
        assert!(BinaryForm::from_normalized_i64(&f, &[1, 0, 0, 0, 0, 1]).is_err());
        assert!(BinaryForm::from_normalized_i64(&f, &[1, 0, 0, 0, 1]).is_ok());
    }

    #[test]
    fn worked_example_coefficients() {
        let f = BinaryForm::from_normalized_i64(&Rationals, &[1, 2, 3, 4, 5]).unwrap();
        let c = f.coeffs(&Rationals);
        assert_eq!(c, [1, 8, 18, 16, 5].map(|x| Rationals.from_i64(x)).to_vec());
        let g = BinaryForm::from_coeffs(&Rationals, c).unwrap();
        assert_eq!(g.normalized(), f.normalized());
        assert_eq!(g.provenance(), Provenance::Raw);
    }

    #[test]
    fn squarefree_examples() {
        let f = Rationals;
        assert!(!bp(&[1, -2, 1]).is_squarefree(&f).unwrap());
        // (5x-11y)(x-2y)(x+2y)(x+y) in v-order
        let l = |a: i64, b: i64| bp(&[b, a]);
        let q = l(5, -11).mul(&f, &l(1, -2)).mul(&f, &l(1, 2)).mul(&f, &l(1, 1));
        assert!(q.is_squarefree(&f).unwrap());
        assert!(!bp(&[0, 0, 0, 1]).is_squarefree(&f).unwrap());
        assert!(bp(&[0, 1]).is_squarefree(&f).unwrap());
        assert!(bp(&[1, 0]).is_squarefree(&f).unwrap());
        assert!(!bp(&[1, 0, 0]).is_squarefree(&f).unwrap());
        assert!(bp(&[0, 1, 0]).is_squarefree(&f).unwrap());
        assert_eq!(bp(&[0, 0]).is_squarefree(&f), Err(Error::ZeroForm));
    }

    #[test]
    fn homogenize_roundtrip_and_valuations() {
        let f = Rationals;
        let p = Poly::from_i64s(&f, &[0, 3, 1]);
        let h = BivariatePoly::homogenize(&f, &p, 4).unwrap();
        assert_eq!(h.y_valuation(&f), Some(2));
        assert_eq!(h.x_valuation(&f), Some(1));
        assert_eq!(h.dehomogenize(&f), p);
        assert!(BivariatePoly::homogenize(&f, &p, 1).is_err());
        let r = BivariatePoly::homogenize_reversed(&f, &p, 2).unwrap();
        assert_eq!(r, bp(&[1, 3, 0]));
    }

    #[test]
    fn eval_matches_expansion() {
        let f = Rationals;
        // x^2 - 2xy + y^2 at (3, 1) = 4
        assert_eq!(bp(&[1, -2, 1]).eval(&f, &f.from_i64(3), &f.from_i64(1)), f.from_i64(4));
        // y^3 at (5, 2) = 8
        assert_eq!(bp(&[1, 0, 0, 0]).eval(&f, &f.from_i64(5), &f.from_i64(2)), f.from_i64(8));
    }

    #[test]
    fn canonical_scaling() {
        let f = Rationals;
        assert_eq!(bp(&[25, -50, 25]).canonical(&f), bp(&[1, -2, 1]));
        assert_eq!(bp(&[-3, 0]).canonical(&f), bp(&[1, 0]));
        assert!(bp(&[0, 5, -4, 0]).projectively_eq(&f, &bp(&[0, -10, 8, 0])));
    }

    fn arb_linear() -> impl Strategy<Value = (i64, i64)> {
        (-6i64..6, -6i64..6).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
    }

    proptest! {
        #[test]
        fn raw_normalized_roundtrip(d in 1usize..200, seed in any::<u64>()) {
            let f = Rationals;
            let a: Vec<BigRational> = (0..=d).map(|i| f.from_i64(((seed >> (i % 60)) as i64 % 17) - 8 + (i == 0) as i64 * 100)).collect();
            let form = BinaryForm::from_normalized(&f, a.clone()).unwrap();
            let back = BinaryForm::from_coeffs(&f, form.coeffs(&f)).unwrap();
            prop_assert_eq!(back.normalized(), &a[..]);
        }

        #[test]
        fn squarefree_products(ls in prop::collection::vec(arb_linear(), 1..6), sq in arb_linear()) {
            let f = Rationals;
            let lin: Vec<_> = ls.iter().map(|&(a, b)| bp(&[b, a])).collect();
            let prod = lin.iter().skip(1).fold(lin[0].clone(), |acc, l| acc.mul(&f, l));
            let distinct = {
                let c: Vec<_> = lin.iter().map(|l| l.canonical(&f)).collect();
                (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i] != c[j]))
            };
            prop_assert_eq!(prod.is_squarefree(&f).unwrap(), distinct);
            let s = bp(&[sq.1, sq.0]);
            prop_assert!(!prod.mul(&f, &s).mul(&f, &s).is_squarefree(&f).unwrap());
        }
    }
}
