//! Brute-force reference implementations and instance generators over the
//! rationals. Everything here materializes matrices and is meant for
//! small degrees only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::field::{binomial_row, Rationals};
use crate::form::{BinaryForm, BivariatePoly};
use crate::hankel::hankel_matrix;
use crate::numeric::NumericTerm;
use crate::poly::Poly;
use crate::{Error, Result};

type Q = BigRational;

/// Echelon form of an integer matrix obtained by fraction-free (Bareiss)
/// elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    cols: usize,
}

fn clear_denominators(row: &[Q]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots, cols }
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn nullspace(&self) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![Q::zero(); self.cols];
                x[fc] = Q::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
                    let s: Q = (pc + 1..self.cols).map(|j| Q::from_integer(row[j].clone()) * &x[j]).sum();
                    x[pc] = -s / Q::from_integer(row[pc].clone());
                }
                x
            })
            .collect()
    }
}

fn echelon_of(rows: &[Vec<Q>], cols: usize) -> Echelon {
    bareiss(rows.iter().map(|r| clear_denominators(r)).collect(), cols)
}

/// Basis of the right kernel of a rational matrix with `cols` columns.
pub fn matrix_nullspace(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    echelon_of(rows, cols).nullspace()
}

pub fn matrix_rank(rows: &[Vec<Q>], cols: usize) -> usize {
    echelon_of(rows, cols).rank()
}

/// Exact basis of `ker H_a^k`.
pub fn dense_nullspace(a: &[Q], k: usize) -> Vec<Vec<Q>> {
    matrix_nullspace(&hankel_matrix(a, k), k + 1)
}

pub fn dense_nullity(a: &[Q], k: usize) -> usize {
    k + 1 - matrix_rank(&hankel_matrix(a, k), k + 1)
}

/// Kernel dimensions of the whole Hankel family and the `(N1, N2)` fitted
/// to them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseKernelReport {
    /// `nullities[k - 1] = dim ker H_a^k` for `k = 1..=D`.
    pub nullities: Vec<usize>,
    pub n1: usize,
    pub n2: usize,
    /// Whether every nullity equals `max(0, k - N1) + max(0, k - N2)`.
    pub profile_ok: bool,
}

pub fn dense_kernel_report(a: &[Q]) -> DenseKernelReport {
    let d = a.len() - 1;
    let nullities: Vec<usize> = (1..=d).map(|k| dense_nullity(a, k)).collect();
    let n1 = (1..=d).take_while(|&k| nullities[k - 1] == 0).last().unwrap_or(0);
    let n2 = d - n1;
    let profile_ok = (1..=d).all(|k| nullities[k - 1] == k.saturating_sub(n1) + k.saturating_sub(n2));
    DenseKernelReport { nullities, n1, n2, profile_ok }
}

fn naive_gcd(mut p: Poly<Q>, mut q: Poly<Q>) -> Poly<Q> {
    let f = Rationals;
    while !q.is_zero() {
        let r = p.rem(&f, &q).expect("nonzero divisor");
        p = q;
        q = r;
    }
    p.monic(&f)
}

/// Square-freeness by a plain Euclidean loop, independent of the
/// half-GCD.
pub fn naive_is_squarefree(q: &BivariatePoly<Q>) -> bool {
    let f = Rationals;
    match q.y_valuation(&f) {
        None => false,
        Some(v) if v >= 2 => false,
        _ => {
            let qx = q.dehomogenize(&f);
            naive_gcd(qx.clone(), qx.derivative(&f)).degree() == 0
        }
    }
}

/// Rank, uniqueness and `(N1, N2)` recovered from dense kernels only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRank {
    pub n1: usize,
    pub n2: usize,
    pub rank: usize,
    pub unique: bool,
}

pub fn oracle_rank(form: &BinaryForm<Q>) -> OracleRank {
    let report = dense_kernel_report(form.normalized());
    oracle_rank_from_report(form, &report)
}

pub fn oracle_rank_from_report(form: &BinaryForm<Q>, report: &DenseKernelReport) -> OracleRank {
    let (n1, n2) = (report.n1, report.n2);
    let pv_squarefree = if n1 == n2 {
        true
    } else {
        let basis = dense_nullspace(form.normalized(), n1 + 1);
        basis.len() == 1 && naive_is_squarefree(&BivariatePoly::new(basis[0].clone()))
    };
    let rank = if pv_squarefree { n1 + 1 } else { n2 + 1 };
    OracleRank { n1, n2, rank, unique: rank == n1 + 1 && n1 < n2 }
}

/// Whether `r` is the rank: `ker H^r` holds a square-free polynomial and
/// no `ker H^k`, `k < r`, does. A kernel holds one exactly when the gcd of
/// its basis polynomials is square-free.
pub fn incr_decomp_check(form: &BinaryForm<Q>, r: usize) -> bool {
    let d = form.degree();
    if r == 0 || r > d + 1 {
        return false;
    }
    (1..=r).find(|&k| kernel_has_squarefree(form.normalized(), k)) == Some(r)
}

fn kernel_has_squarefree(a: &[Q], k: usize) -> bool {
    let f = Rationals;
    let basis = if k == a.len() {
        (0..=k).map(|i| (0..=k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
    } else {
        dense_nullspace(a, k)
    };
    if basis.is_empty() {
        return false;
    }
    let polys: Vec<BivariatePoly<Q>> = basis.into_iter().map(BivariatePoly::new).collect();
    let yv = polys.iter().filter_map(|p| p.y_valuation(&f)).min().unwrap_or(0);
    let g = polys.iter().map(|p| p.dehomogenize(&f)).fold(Poly::zero(), |acc, p| if acc.is_zero() { p.monic(&f) } else { naive_gcd(acc, p) });
    yv <= 1 && naive_gcd(g.clone(), g.derivative(&f)).degree() == 0
}

/// Exact solution of `sum_j alpha_j^i lambda_j = a_i`, `i < n`.
#[allow(clippy::needless_range_loop)]
pub fn vandermonde_solve_exact(alphas: &[Q], a: &[Q]) -> Result<Vec<Q>> {
    let n = alphas.len();
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if alphas[i] == alphas[j] {
                return Err(Error::DuplicatePoint(alphas[i].to_string()));
            }
        }
    }
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = alphas.iter().map(|x| num_traits::pow(x.clone(), i)).collect();
            row.push(a[i].clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).ok_or_else(|| Error::Internal("singular Vandermonde system".into()))?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=n {
                    let v = &m[c][j] * &factor;
                    m[i][j] -= v;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

/// `a_i = sum_j lambda_j alpha_j^i beta_j^(D-i)`, the normalized
/// coefficients of `sum_j lambda_j (alpha_j x + beta_j y)^D`.
pub fn rational_instance(points: &[(Q, Q)], lambdas: &[Q], d: usize) -> Result<BinaryForm<Q>> {
    if points.len() != lambdas.len() {
        return Err(Error::DimensionMismatch { expected: points.len(), got: lambdas.len() });
    }
    for (i, (a, b)) in points.iter().enumerate() {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("(0:0) is not a projective point".into()));
        }
        for (c, e) in &points[i + 1..] {
            if a * e == b * c {
                return Err(Error::DuplicatePoint(format!("({a}:{b})")));
            }
        }
    }
    if lambdas.iter().any(|l| l.is_zero()) {
        return Err(Error::InvalidArgument("weights must be nonzero".into()));
    }
    let a: Vec<Q> = (0..=d)
        .map(|i| {
            points
                .iter()
                .zip(lambdas)
                .map(|((al, be), l)| l * num_traits::pow(al.clone(), i) * num_traits::pow(be.clone(), d - i))
                .sum()
        })
        .collect();
    BinaryForm::from_normalized(&Rationals, a)
}

/// The shifted copies `x^j y^(len-1-j) P_v`, `j < len`, as vectors.
pub fn u_chain(v: &[Q], len: usize) -> Vec<Vec<Q>> {
    (0..len)
        .map(|j| {
            let mut w = vec![Q::zero(); v.len() + len - 1];
            w[j..j + v.len()].clone_from_slice(v);
            w
        })
        .collect()
}

pub fn in_span(basis: &[Vec<Q>], w: &[Q]) -> bool {
    let cols = w.len();
    let r = matrix_rank(basis, cols);
    let mut ext = basis.to_vec();
    ext.push(w.to_vec());
    matrix_rank(&ext, cols) == r
}

/// A form whose Hankel kernels are generated by `P_v` and `P_w`, checked
/// against the dense kernel profile.
pub fn instance_from_kernel_pair(pv: &BivariatePoly<Q>, pw: &BivariatePoly<Q>) -> Result<BinaryForm<Q>> {
    let (n, m) = (pv.degree(), pw.degree());
    if n == 0 || m < n {
        return Err(Error::InvalidArgument(format!("need 1 <= deg P_v <= deg P_w, got {n} and {m}")));
    }
    let d = n + m - 2;
    if d == 0 {
        return Err(Error::InvalidArgument("the pair describes a form of degree zero".into()));
    }
    let mut rows = Vec::new();
    for p in [pv, pw] {
        let k = p.degree();
        for i in 0..(d + 1).saturating_sub(k) {
            let mut row = vec![Q::zero(); d + 1];
            for (j, c) in p.coeffs().iter().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
    }
    let basis = matrix_nullspace(&rows, d + 1);
    let mut candidates: Vec<Vec<Q>> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(basis[i].iter().zip(&basis[j]).map(|(x, y)| x + y).collect());
        }
    }
    if basis.len() > 2 {
        candidates.push((0..=d).map(|t| basis.iter().map(|b| &b[t]).sum()).collect());
    }
    for a in candidates {
        let Ok(form) = BinaryForm::from_normalized(&Rationals, a) else {
            continue;
        };
        let report = dense_kernel_report(form.normalized());
        if report.profile_ok && (report.n1, report.n2) == (n - 1, m - 1) {
            return Ok(form);
        }
    }
    Err(Error::Precondition(format!("no candidate among {} kernel vectors has kernel degrees ({}, {})", basis.len(), n - 1, m - 1)))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

/// Degrees of the irreducible factors over the rationals of a square-free
/// polynomial, found by stripping rational roots. Any cofactor of degree
/// at most 3 without rational roots is irreducible; larger cofactors are
/// beyond this helper and reported as an error.
pub fn factor_degrees(p: &Poly<Q>) -> Result<Vec<usize>> {
    let f = Rationals;
    let mut rest = p.clone();
    let mut degs = Vec::new();
    loop {
        let Some(deg) = rest.degree().finite() else {
            return Err(Error::ZeroForm);
        };
        if deg == 0 {
            break;
        }
        let ints = clear_denominators(rest.coeffs());
        let root = if ints[0].is_zero() {
            Some(Q::zero())
        } else {
            let lead = ints.last().unwrap();
            let mut found = None;
            'search: for num in divisors(&ints[0]) {
                for den in divisors(lead) {
                    for s in [1i32, -1] {
                        let cand = Q::new(&num * s, den.clone());
                        if rest.eval(&f, &cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            found
        };
        match root {
            Some(r) => {
                degs.push(1);
                rest = rest.quo(&f, &Poly::from_coeffs(&f, vec![-r, Q::one()]))?;
            }
            None if deg <= 3 => {
                degs.push(deg);
                break;
            }
            None => return Err(Error::InvalidArgument(format!("cofactor of degree {deg} has no rational root; factoring it is unsupported"))),
        }
    }
    degs.sort_unstable();
    Ok(degs)
}

/// Irreducible factor degrees of a binary form, `y` counted as a linear
/// factor.
pub fn form_factor_degrees(q: &BivariatePoly<Q>) -> Result<Vec<usize>> {
    let f = Rationals;
    let yv = q.y_valuation(&f).ok_or(Error::ZeroForm)?;
    let mut degs = factor_degrees(&q.dehomogenize(&f))?;
    degs.extend(std::iter::repeat_n(1, yv));
    degs.sort_unstable();
    Ok(degs)
}

/// A term `lambda (alpha x + y)^D` (or `lambda x^D` at infinity) with
/// Gaussian-rational parameters given as `(re, im)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTerm {
    pub lambda: (Q, Q),
    pub alpha: (Q, Q),
    pub at_infinity: bool,
}

impl ExactTerm {
    /// The midpoints of a numeric term.
    pub fn from_midpoints(t: &NumericTerm) -> Self {
        ExactTerm {
            lambda: (t.lambda.re.to_rational(), t.lambda.im.to_rational()),
            alpha: (t.alpha.re.to_rational(), t.alpha.im.to_rational()),
            at_infinity: t.at_infinity,
        }
    }
}

/// Exact `max_i |c_i - c~_i|^2` for the expansion of the term midpoints,
/// computed over the Gaussian rationals.
pub fn exact_residual_sq(form: &BinaryForm<Q>, terms: &[NumericTerm]) -> Q {
    let exact: Vec<ExactTerm> = terms.iter().map(ExactTerm::from_midpoints).collect();
    exact_terms_residual_sq(form, &exact)
}

/// Exact `max_i |c_i - c~_i|^2` where `c~` expands `terms`.
pub fn exact_terms_residual_sq(form: &BinaryForm<Q>, terms: &[ExactTerm]) -> Q {
    let d = form.degree();
    let mut sums = vec![(Q::zero(), Q::zero()); d + 1];
    for t in terms {
        if t.at_infinity {
            sums[d].0 += &t.lambda.0;
            sums[d].1 += &t.lambda.1;
            continue;
        }
        let alpha = &t.alpha;
        let mut pw = t.lambda.clone();
        for s in sums.iter_mut() {
            s.0 += &pw.0;
            s.1 += &pw.1;
            pw = (&pw.0 * &alpha.0 - &pw.1 * &alpha.1, &pw.0 * &alpha.1 + &pw.1 * &alpha.0);
        }
    }
    let binoms = binomial_row(d);
    sums.iter()
        .zip(form.normalized())
        .zip(binoms)
        .map(|(((re, im), a), c)| {
            let c = Q::from_integer(c);
            let dre = (a - re) * &c;
            let dim = im * &c;
            &dre * &dre + &dim * &dim
        })
        .max()
        .unwrap_or_else(Q::zero)
}
