//! Kernel structure of the Hankel family `H_a^k`, `H[i][j] = a_(i+j)`.
//!
//! Kernel vectors are ordered like the coefficients of the matching
//! [`BivariatePoly`]: `c = (c_0..c_k)` stands for `sum c_i x^i y^(k-i)`.

use crate::euclid::{halfgcd_seek, SeekResult};
use crate::field::Field;
use crate::form::{BinaryForm, BivariatePoly};
use crate::poly::{Degree, Poly};
use crate::{Error, Result};

/// Generators `P_v`, `P_w` of every Hankel kernel of a form, with
/// `deg P_v = N1 + 1`, `deg P_w = N2 + 1` and `N1 + N2 = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPair<T> {
    pub n1: usize,
    pub n2: usize,
    pub pv: BivariatePoly<T>,
    pub pw: BivariatePoly<T>,
    /// Index of the Euclidean row that produced `P_v`.
    pub row_index: usize,
}

/// `H_a^k u` through one polynomial product; `u` has length `k + 1`.
pub fn hankel_apply<F: Field>(f: &F, a: &[F::Elem], k: usize, u: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if u.len() != k + 1 {
        return Err(Error::DimensionMismatch { expected: k + 1, got: u.len() });
    }
    if a.is_empty() || k > a.len() {
        return Err(Error::InvalidArgument(format!("column parameter {k} exceeds the degree {}", a.len().saturating_sub(1))));
    }
    let d = a.len() - 1;
    if k > d {
        return Ok(Vec::new());
    }
    let rev: Vec<F::Elem> = u.iter().rev().cloned().collect();
    let prod = f.mul_slices(a, &rev);
    Ok((k..=d).map(|i| prod.get(i).cloned().unwrap_or_else(|| f.zero())).collect())
}

/// Dense `H_a^k`, rows of length `k + 1`; empty for `k = D + 1`.
pub fn hankel_matrix<T: Clone>(a: &[T], k: usize) -> Vec<Vec<T>> {
    (0..(a.len() as isize - k as isize).max(0) as usize).map(|i| a[i..=i + k].to_vec()).collect()
}

/// True when `P` lies in the kernel of `H_a^(deg P)`.
pub fn in_kernel<F: Field>(f: &F, a: &[F::Elem], p: &BivariatePoly<F::Elem>) -> Result<bool> {
    let out = hankel_apply(f, a, p.degree(), p.coeffs())?;
    Ok(out.iter().all(|x| f.is_zero(x)))
}

/// `P_v` and `P_w` from the Euclidean rows of `A = sum a_i x^i` against
/// `x^(D+1)` around the first remainder of degree below `(D+1)/2`.
pub fn kernel_pair<F: Field>(f: &F, form: &BinaryForm<F::Elem>) -> Result<KernelPair<F::Elem>> {
    let d = form.degree();
    let a = form.a_poly(f);
    let b = Poly::monomial(f, f.one(), d + 1);
    let seek = halfgcd_seek(f, &a, &b, (d + 2) / 2)?;
    kernel_pair_from_rows(f, d, &seek)
}

pub(crate) fn kernel_pair_from_rows<F: Field>(f: &F, d: usize, seek: &SeekResult<F::Elem>) -> Result<KernelPair<F::Elem>> {
    let row = &seek.row;
    let du = row.u.degree().finite().ok_or_else(|| Error::Internal("U_i vanished".into()))?;
    let dr = row.r.degree();
    let m = du.max(dr.plus(1).finite().unwrap_or(0));
    let pv = BivariatePoly::homogenize_reversed(f, &row.u, m)?;
    let n1 = m - 1;

    let (pw, n2) = if Degree::Fin(du) > dr {
        let prev = seek.prev.as_ref().ok_or_else(|| Error::Internal("missing previous row".into()))?;
        let n2 = prev.r.degree().finite().ok_or_else(|| Error::Internal("R_(i-1) vanished".into()))?;
        (BivariatePoly::homogenize_reversed(f, &prev.u, n2 + 1)?, n2)
    } else {
        let next = seek.next.as_ref().ok_or_else(|| Error::Internal("missing next row".into()))?;
        let dn = next.u.degree().finite().ok_or_else(|| Error::Internal("U_(i+1) vanished".into()))?;
        (BivariatePoly::homogenize_reversed(f, &next.u, dn)?, dn - 1)
    };
    if n1 + n2 != d || n1 > n2 {
        return Err(Error::Internal(format!("kernel degrees N1={n1} N2={n2} inconsistent with D={d}")));
    }
    Ok(KernelPair { n1, n2, pv: pv.canonical(f), pw: pw.canonical(f), row_index: row.index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, MERSENNE_61};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn bp(v: &[i64]) -> BivariatePoly<BigRational> {
        BivariatePoly::from_i64s(&Rationals, v)
    }

    fn form(a: &[i64]) -> BinaryForm<BigRational> {
        BinaryForm::from_normalized_i64(&Rationals, a).unwrap()
    }

    #[test]
    fn worked_example_pair() {
        let f = Rationals;
        let kp = kernel_pair(&f, &form(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!((kp.n1, kp.n2, kp.row_index), (1, 3, 3));
        assert!(kp.pv.projectively_eq(&f, &bp(&[1, -2, 1])));
        // 5 y x^3 - 4 x^4
        assert!(kp.pw.projectively_eq(&f, &bp(&[0, 0, 0, 5, -4])));
    }

    #[test]
    fn cube_of_linear_form() {
        let f = Rationals;
        let kp = kernel_pair(&f, &form(&[1, 1, 1, 1])).unwrap();
        assert_eq!((kp.n1, kp.n2), (0, 3));
        assert!(kp.pv.projectively_eq(&f, &bp(&[1, -1])));
        assert!(kp.pw.projectively_eq(&f, &bp(&[0, 0, 0, 0, 1])));
    }

    #[test]
    fn pure_powers() {
        let f = Rationals;
        for d in 1..8 {
            let mut a = vec![0i64; d + 1];
            a[d] = 1;
            let kp = kernel_pair(&f, &form(&a)).unwrap();
            assert_eq!((kp.n1, kp.n2), (0, d));
            assert!(kp.pv.projectively_eq(&f, &bp(&[1, 0])), "x^{d}: {:?}", kp.pv);
            let mut xd1 = vec![0i64; d + 2];
            xd1[d + 1] = 1;
            assert!(kp.pw.projectively_eq(&f, &bp(&xd1)));

            let mut a = vec![0i64; d + 1];
            a[0] = 1;
            let kp = kernel_pair(&f, &form(&a)).unwrap();
            assert_eq!((kp.n1, kp.n2), (0, d));
            assert!(kp.pv.projectively_eq(&f, &bp(&[0, 1])), "y^{d}: {:?}", kp.pv);
            let mut yd1 = vec![0i64; d + 2];
            yd1[0] = 1;
            assert!(kp.pw.projectively_eq(&f, &bp(&yd1)));
        }
    }

    #[test]
    fn prime_construction_p3() {
        let f = Rationals;
        let kp = kernel_pair(&f, &form(&[0, 0, 1, 0, 0])).unwrap();
        assert_eq!((kp.n1, kp.n2), (2, 2));
        let x3 = bp(&[0, 0, 0, 1]);
        let y3 = bp(&[1, 0, 0, 0]);
        let pair_matches = |p: &BivariatePoly<BigRational>, q: &BivariatePoly<BigRational>| kp.pv.projectively_eq(&f, p) && kp.pw.projectively_eq(&f, q);
        assert!(pair_matches(&x3, &y3) || pair_matches(&y3, &x3));
    }

    #[test]
    fn apply_examples() {
        let f = Rationals;
        let a: Vec<_> = [1, 2, 3, 4, 5].iter().map(|&x| f.from_i64(x)).collect();
        let u: Vec<_> = [1, -2, 1].iter().map(|&x| f.from_i64(x)).collect();
        assert!(hankel_apply(&f, &a, 2, &u).unwrap().iter().all(|x| f.is_zero(x)));
        let zero = vec![f.zero(); 4];
        assert!(hankel_apply(&f, &a, 3, &zero).unwrap().iter().all(|x| f.is_zero(x)));
        let e0 = vec![f.one(), f.zero()];
        assert_eq!(hankel_apply(&f, &a, 1, &e0).unwrap(), a[..4].to_vec());
        assert!(matches!(hankel_apply(&f, &a, 2, &e0), Err(Error::DimensionMismatch { .. })));
        assert!(hankel_apply(&f, &a, 5, &vec![f.zero(); 6]).unwrap().is_empty());
        assert!(hankel_apply(&f, &a, 6, &vec![f.zero(); 7]).is_err());
    }

    fn dense_apply(a: &[BigRational], k: usize, u: &[BigRational]) -> Vec<BigRational> {
        hankel_matrix(a, k).iter().map(|row| row.iter().zip(u).map(|(x, y)| x * y).sum()).collect()
    }

    proptest! {
        #[test]
        fn apply_matches_dense(a in prop::collection::vec(-9i64..9, 2..40), k in 0usize..40, seed in any::<u64>()) {
            let f = Rationals;
            let d = a.len() - 1;
            let k = k % (d + 1);
            let a: Vec<_> = a.into_iter().map(|x| f.from_i64(x)).collect();
            let u: Vec<_> = (0..=k).map(|i| f.from_i64(((seed >> (i % 64)) & 7) as i64 - 3)).collect();
            prop_assert_eq!(hankel_apply(&f, &a, k, &u).unwrap(), dense_apply(&a, k, &u));
        }

        #[test]
        fn generators_are_in_kernel(a in prop::collection::vec(-5i64..5, 2..60)) {
            let f = Rationals;
            prop_assume!(a.iter().any(|x| *x != 0));
            let form = BinaryForm::from_normalized_i64(&f, &a).unwrap();
            let kp = kernel_pair(&f, &form).unwrap();
            prop_assert_eq!(kp.n1 + kp.n2, form.degree());
            prop_assert!(in_kernel(&f, form.normalized(), &kp.pv).unwrap());
            prop_assert!(in_kernel(&f, form.normalized(), &kp.pw).unwrap());
            let g = crate::euclid::gcd(&f, &kp.pv.dehomogenize(&f), &kp.pw.dehomogenize(&f)).unwrap();
            let both_y = kp.pv.y_valuation(&f).unwrap() > 0 && kp.pw.y_valuation(&f).unwrap() > 0;
            prop_assert!(g.degree() == 0 && !both_y);
        }

        #[test]
        fn generators_over_prime_field(a in prop::collection::vec(0u64..MERSENNE_61, 2..200)) {
            let f = PrimeField::new(MERSENNE_61).unwrap();
            prop_assume!(a.iter().any(|x| *x != 0));
            let form = BinaryForm::from_normalized(&f, a).unwrap();
            let kp = kernel_pair(&f, &form).unwrap();
            prop_assert!(in_kernel(&f, form.normalized(), &kp.pv).unwrap());
        }
    }
}
