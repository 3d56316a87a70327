//! Extended Euclidean rows and the half-GCD shortcut.
//!
//! Rows follow the convention `U_i A + V_i B = R_i` with
//! `(U_0, V_0, R_0) = (0, 1, B)` and `(U_1, V_1, R_1) = (1, 0, A)`.
//! No row is ever normalized, so the fast path reproduces the classical
//! rows exactly.

use crate::field::Field;
use crate::poly::Poly;
use crate::{Error, Result};

const HGCD_CUTOFF: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgcdRow<T> {
    pub index: usize,
    pub u: Poly<T>,
    pub v: Poly<T>,
    pub r: Poly<T>,
}

/// Rows `i - 1`, `i` and `i + 1` around the first `i` with
/// `deg R_i < bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeekResult<T> {
    pub prev: Option<EgcdRow<T>>,
    pub row: EgcdRow<T>,
    pub next: Option<EgcdRow<T>>,
}

impl<T: Clone + PartialEq> SeekResult<T> {
    pub fn index(&self) -> usize {
        self.row.index
    }
}

fn step<F: Field>(f: &F, prev: &EgcdRow<F::Elem>, cur: &EgcdRow<F::Elem>) -> Result<EgcdRow<F::Elem>> {
    let (q, r) = prev.r.div_rem(f, &cur.r)?;
    Ok(EgcdRow {
        index: cur.index + 1,
        u: prev.u.sub(f, &q.mul(f, &cur.u)),
        v: prev.v.sub(f, &q.mul(f, &cur.v)),
        r,
    })
}

fn initial_rows<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (EgcdRow<F::Elem>, EgcdRow<F::Elem>) {
    (
        EgcdRow { index: 0, u: Poly::zero(), v: Poly::one(f), r: b.clone() },
        EgcdRow { index: 1, u: Poly::one(f), v: Poly::zero(), r: a.clone() },
    )
}

/// Every row of the classical extended Euclidean algorithm, ending with
/// the first zero remainder.
pub fn egcd_all_rows<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Vec<EgcdRow<F::Elem>>> {
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let (r0, r1) = initial_rows(f, a, b);
    let mut rows = vec![r0, r1];
    while !rows.last().unwrap().r.is_zero() {
        let n = rows.len();
        let next = step(f, &rows[n - 2], &rows[n - 1])?;
        rows.push(next);
    }
    Ok(rows)
}

/// Classical counterpart of [`halfgcd_seek`], quadratic but obviously
/// correct.
pub fn classical_seek<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>, bound: usize) -> Result<SeekResult<F::Elem>> {
    check_seek_args(b, bound)?;
    let (r0, r1) = initial_rows(f, a, b);
    if r0.r.degree() < bound {
        return Ok(SeekResult { prev: None, row: r0, next: Some(r1) });
    }
    let (mut prev, mut cur) = (r0, r1);
    while cur.r.degree() >= bound {
        let next = step(f, &prev, &cur)?;
        prev = cur;
        cur = next;
    }
    finish(f, Some(prev), cur)
}

fn check_seek_args<T: Clone + PartialEq>(b: &Poly<T>, bound: usize) -> Result<()> {
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if bound == 0 {
        return Err(Error::InvalidArgument("seek bound must be positive".into()));
    }
    Ok(())
}

fn finish<F: Field>(f: &F, prev: Option<EgcdRow<F::Elem>>, row: EgcdRow<F::Elem>) -> Result<SeekResult<F::Elem>> {
    let next = match (&prev, row.r.is_zero()) {
        (Some(p), false) => Some(step(f, p, &row)?),
        _ => None,
    };
    Ok(SeekResult { prev, row, next })
}

/// `[[m00, m01], [m10, m11]]` mapping a remainder pair to a later one.
#[derive(Clone, Debug)]
struct Mat<T> {
    m: [[Poly<T>; 2]; 2],
    steps: usize,
}

impl<T: Clone + PartialEq> Mat<T> {
    fn identity<F: Field<Elem = T>>(f: &F) -> Self {
        Mat { m: [[Poly::one(f), Poly::zero()], [Poly::zero(), Poly::one(f)]], steps: 0 }
    }

    fn apply<F: Field<Elem = T>>(&self, f: &F, a: &Poly<T>, b: &Poly<T>) -> (Poly<T>, Poly<T>) {
        let [[m00, m01], [m10, m11]] = &self.m;
        (m00.mul(f, a).add(f, &m01.mul(f, b)), m10.mul(f, a).add(f, &m11.mul(f, b)))
    }

    /// `self * other`.
    fn compose<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Self {
        let a = &self.m;
        let b = &other.m;
        let e = |i: usize, j: usize| a[i][0].mul(f, &b[0][j]).add(f, &a[i][1].mul(f, &b[1][j]));
        Mat { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]], steps: self.steps + other.steps }
    }

    /// Left multiplication by `[[0, 1], [1, -q]]`.
    fn push_quotient<F: Field<Elem = T>>(self, f: &F, q: &Poly<T>) -> Self {
        let [[m00, m01], [m10, m11]] = self.m;
        let n0 = m00.sub(f, &q.mul(f, &m10));
        let n1 = m01.sub(f, &q.mul(f, &m11));
        Mat { m: [[m10, m11], [n0, n1]], steps: self.steps + 1 }
    }
}

/// Matrix of the quotient steps taking `(a, b)`, `deg a > deg b`, to the
/// consecutive remainders straddling `ceil(deg a / 2)`.
fn hgcd<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Mat<F::Elem>> {
    let Some(n) = a.degree().finite() else {
        return Ok(Mat::identity(f));
    };
    let m = n.div_ceil(2);
    if b.degree() < m {
        return Ok(Mat::identity(f));
    }
    if n <= HGCD_CUTOFF {
        let mut mat = Mat::identity(f);
        let (mut x, mut y) = (a.clone(), b.clone());
        while y.degree() >= m {
            let (q, r) = x.div_rem(f, &y)?;
            mat = mat.push_quotient(f, &q);
            x = y;
            y = r;
        }
        return Ok(mat);
    }
    let m1 = hgcd(f, &a.shr(m), &b.shr(m))?;
    let (x, y) = m1.apply(f, a, b);
    if y.degree() < m {
        return Ok(m1);
    }
    let (q, r) = x.div_rem(f, &y)?;
    let m1 = m1.push_quotient(f, &q);
    let l = y.degree().finite().expect("nonzero");
    let k = (2 * m).saturating_sub(l);
    let m2 = hgcd(f, &y.shr(k), &r.shr(k))?;
    Ok(m2.compose(f, &m1))
}

/// First row `i` with `deg R_i < bound`, together with its neighbours,
/// computed by divide and conquer in `O(M(n) log n)` field operations.
pub fn halfgcd_seek<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>, bound: usize) -> Result<SeekResult<F::Elem>> {
    check_seek_args(b, bound)?;
    let (r0, r1) = initial_rows(f, a, b);
    if r0.r.degree() < bound {
        return Ok(SeekResult { prev: None, row: r0, next: Some(r1) });
    }
    let mut total = Mat::identity(f);
    let (mut x, mut y) = (b.clone(), a.clone());
    while y.degree() >= bound {
        let progressed = if x.degree() > y.degree() {
            let n = x.degree().finite().expect("nonzero");
            let k = (2 * bound).saturating_sub(n);
            let mat = hgcd(f, &x.shr(k), &y.shr(k))?;
            if mat.steps > 0 {
                (x, y) = mat.apply(f, &x, &y);
                total = mat.compose(f, &total);
                true
            } else {
                false
            }
        } else {
            false
        };
        if !progressed {
            let (q, r) = x.div_rem(f, &y)?;
            total = total.push_quotient(f, &q);
            x = y;
            y = r;
        }
    }
    let [[v0, u0], [v1, u1]] = total.m;
    let i = total.steps + 1;
    let prev = EgcdRow { index: i - 1, u: u0, v: v0, r: x };
    let row = EgcdRow { index: i, u: u1, v: v1, r: y };
    finish(f, Some(prev), row)
}

/// Monic greatest common divisor; errors when both inputs vanish.
pub fn gcd<F: Field>(f: &F, p: &Poly<F::Elem>, q: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    let (big, small) = if p.degree() >= q.degree() { (p, q) } else { (q, p) };
    if big.is_zero() {
        return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
    }
    if small.is_zero() {
        return Ok(big.monic(f));
    }
    let s = halfgcd_seek(f, small, big, 1)?;
    Ok(match (s.row.r.is_zero(), s.prev) {
        (true, Some(prev)) => prev.r.monic(f),
        _ => Poly::one(f),
    })
}

/// Row invariants checked by the tests: Bezout identity and degree law.
pub fn check_row<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>, row: &EgcdRow<F::Elem>) -> bool {
    row.u.mul(f, a).add(f, &row.v.mul(f, b)) == row.r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, MERSENNE_61};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::from_i64s(&Rationals, c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_example_rows() {
        let f = Rationals;
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[0, 0, 0, 0, 0, 1]);
        let rows = egcd_all_rows(&f, &a, &b).unwrap();
        let r2 = &rows[2];
        assert_eq!(r2.v, p(&[1]));
        assert_eq!(r2.u, Poly::from_coeffs(&f, vec![q(4, 25), q(-1, 5)]));
        assert_eq!(r2.r, Poly::from_coeffs(&f, vec![q(4, 25), q(3, 25), q(2, 25), q(1, 25)]));
        let r3 = &rows[3];
        assert_eq!(r3.u, p(&[25, -50, 25]));
        assert_eq!(r3.v, p(&[150, -125]));
        assert_eq!(r3.r, p(&[25]));
        assert_eq!(rows[4].r, Poly::zero());
        assert_eq!(rows[4].u, Poly::from_coeffs(&f, vec![q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(-1, 25)]));
    }

    #[test]
    fn pure_power_rows() {
        let f = Rationals;
        let rows = egcd_all_rows(&f, &p(&[0, 0, 0, 1]), &p(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(rows[2].u, p(&[0, -1]));
        assert!(rows[2].r.is_zero());
        assert_eq!(rows.len(), 3);
    }

    #[test]
    fn geometric_rows() {
        let f = Rationals;
        let rows = egcd_all_rows(&f, &p(&[1, 1, 1, 1]), &p(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(rows[2].u, p(&[1, -1]));
        assert_eq!(rows[2].r, p(&[1]));
    }

    #[test]
    fn seek_examples() {
        let f = Rationals;
        let s = halfgcd_seek(&f, &p(&[1, 2, 3, 4, 5]), &p(&[0, 0, 0, 0, 0, 1]), 3).unwrap();
        let rows = egcd_all_rows(&f, &p(&[1, 2, 3, 4, 5]), &p(&[0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.index(), 3);
        assert_eq!(s.prev.as_ref().unwrap(), &rows[2]);
        assert_eq!(s.row, rows[3]);
        assert_eq!(s.next.as_ref().unwrap(), &rows[4]);

        let s = halfgcd_seek(&f, &p(&[1, 1, 1, 1]), &p(&[0, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(s.index(), 2);
        assert_eq!(s.row.u, p(&[1, -1]));
        assert_eq!(s.row.r, p(&[1]));
    }

    #[test]
    fn seek_errors() {
        let f = Rationals;
        assert_eq!(halfgcd_seek(&f, &p(&[1]), &Poly::zero(), 1), Err(Error::ZeroDivisor));
        assert!(matches!(halfgcd_seek(&f, &p(&[1]), &p(&[0, 1]), 0), Err(Error::InvalidArgument(_))));
        assert_eq!(egcd_all_rows(&f, &p(&[1]), &Poly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn gcd_examples() {
        let f = Rationals;
        assert_eq!(gcd(&f, &p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(gcd(&f, &p(&[0, 0, 0, 1]), &p(&[0, 0, 3])).unwrap(), p(&[0, 0, 1]));
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = p(&[-1, 1]).mul(&f, &p(&[-1, 1])).mul(&f, &p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&f, &p(&[3, 1]));
        assert_eq!(gcd(&f, &a, &b).unwrap(), p(&[-1, 1]));
        assert_eq!(gcd(&f, &p(&[5]), &Poly::zero()).unwrap(), p(&[1]));
        assert!(gcd(&f, &Poly::zero(), &Poly::zero()).is_err());
    }

    fn check_all_invariants(f: &Rationals, a: &Poly<BigRational>, b: &Poly<BigRational>) {
        let rows = egcd_all_rows(f, a, b).unwrap();
        for w in rows.windows(2) {
            let (r, s) = (&w[0], &w[1]);
            assert!(check_row(f, a, b, r));
            if r.index > 0 {
                assert!(s.r.degree() < r.r.degree());
            }
            // U_i V_(i+1) - U_(i+1) V_i = (-1)^(i+1)
            let det = r.u.mul(f, &s.v).sub(f, &s.u.mul(f, &r.v));
            let sign = if r.index % 2 == 0 { -1 } else { 1 };
            assert_eq!(det, p(&[sign]));
            if s.index >= 1 {
                assert_eq!(s.u.degree().to_i64(), b.degree().to_i64() - r.r.degree().to_i64());
            }
        }
    }

    fn arb_a(max: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..10, 1..max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn row_invariants(a in arb_a(40)) {
            let f = Rationals;
            let d = a.len() - 1;
            let a = p(&a);
            prop_assume!(!a.is_zero());
            let mut bc = vec![0i64; d + 2];
            bc[d + 1] = 1;
            check_all_invariants(&f, &a, &p(&bc));
        }

        #[test]
        fn seek_matches_classical_rationals(a in arb_a(70), bound in 1usize..50) {
            let f = Rationals;
            let d = a.len() - 1;
            let a = p(&a);
            let b = Poly::monomial(&f, f.one(), d + 1);
            prop_assert_eq!(halfgcd_seek(&f, &a, &b, bound).unwrap(), classical_seek(&f, &a, &b, bound).unwrap());
        }

        #[test]
        fn seek_matches_classical_prime(a in prop::collection::vec(0u64..MERSENNE_61, 1..300), bound in 1usize..200, sparse in any::<bool>()) {
            let f = PrimeField::new(MERSENNE_61).unwrap();
            let d = a.len() - 1;
            let a: Vec<u64> = if sparse { a.iter().enumerate().map(|(i, x)| if i % 3 == 0 { *x } else { 0 }).collect() } else { a };
            let a = Poly::from_coeffs(&f, a);
            let b = Poly::monomial(&f, 1, d + 1);
            prop_assert_eq!(halfgcd_seek(&f, &a, &b, bound).unwrap(), classical_seek(&f, &a, &b, bound).unwrap());
        }

        #[test]
        fn seek_general_pairs(a in arb_a(60), b in arb_a(60), bound in 1usize..60) {
            let f = Rationals;
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!b.is_zero());
            prop_assert_eq!(halfgcd_seek(&f, &a, &b, bound).unwrap(), classical_seek(&f, &a, &b, bound).unwrap());
        }
    }
}
