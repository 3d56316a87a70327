//! Rank, square-free kernel polynomial and symbolic weights.
//!
//! A symbolic decomposition of `f` is a square-free kernel polynomial `Q`
//! of degree `r` together with `T` and `Q'` such that
//! `f = sum_{Qx(alpha) = 0} (T/Q')(alpha) (alpha x + y)^D`, plus a single
//! `lambda_inf x^D` term when `y` divides `Q`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::form::{BinaryForm, BivariatePoly};
use crate::hankel::{in_kernel, kernel_pair, KernelPair};
use crate::poly::{interpolate, Poly};
use crate::{Error, Result};

/// Default number of interpolation attempts before giving up.
pub const DEFAULT_RETRY_BUDGET: usize = 32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Sweep `Q = mu * y^(N2-N1) P_v + P_w` over `mu = 0, 1, 2, ...`.
    #[default]
    Deterministic,
    /// Interpolate a multiplier through random small-integer points.
    Interpolated,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "det" | "deterministic" => Ok(Strategy::Deterministic),
            "interp" | "interpolated" => Ok(Strategy::Interpolated),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Projective point `(alpha : 1)` or `(1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjPoint<T> {
    Finite(T),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicDecomposition<T> {
    pub rank: usize,
    pub border_rank: usize,
    pub unique: bool,
    pub n1: usize,
    pub n2: usize,
    pub q: BivariatePoly<T>,
    pub y_divides: bool,
    /// Monic `Q(x, 1)`, or monic `(Q / y)(x, 1)` when `y | Q`.
    pub qx: Poly<T>,
    pub t: Poly<T>,
    pub dq: Poly<T>,
    pub lambda_inf: Option<T>,
    /// Sweep index of the deterministic construction, when it ran.
    pub mu0: Option<usize>,
}

impl<T: Clone + PartialEq> SymbolicDecomposition<T> {
    /// Weight `T(alpha) / Q'(alpha)` at a root of `qx`.
    pub fn lambda_at<F: Field<Elem = T>>(&self, f: &F, alpha: &T) -> Result<T> {
        f.div(&self.t.eval(f, alpha), &self.dq.eval(f, alpha))
    }
}

/// `(r, unique)` from the square-freeness of `P_v`.
pub fn rank_of<F: Field>(f: &F, kp: &KernelPair<F::Elem>) -> Result<(usize, bool)> {
    if kp.pv.is_squarefree(f)? {
        Ok((kp.n1 + 1, kp.n1 < kp.n2))
    } else {
        Ok((kp.n2 + 1, false))
    }
}

/// First square-free `mu * y^(N2-N1) P_v + P_w`, `mu = 0..=2D+2`, after
/// replacing `P_w` by `x^(N2-N1) P_v + P_w` when `y^2 | P_w`. Returns the
/// polynomial and the winning `mu`.
pub fn build_q_deterministic<F: Field>(f: &F, kp: &KernelPair<F::Elem>) -> Result<(BivariatePoly<F::Elem>, usize)> {
    require_non_squarefree(f, kp)?;
    sweep(f, kp)
}

fn require_non_squarefree<F: Field>(f: &F, kp: &KernelPair<F::Elem>) -> Result<()> {
    if kp.pv.is_squarefree(f)? {
        return Err(Error::Precondition("P_v is square-free, the rank is N1 + 1 and P_v itself is Q".into()));
    }
    Ok(())
}

fn sweep<F: Field>(f: &F, kp: &KernelPair<F::Elem>) -> Result<(BivariatePoly<F::Elem>, usize)> {
    let gap = kp.n2 - kp.n1;
    let d = kp.n1 + kp.n2;
    let mut pw = kp.pw.clone();
    if pw.y_valuation(f).unwrap_or(0) >= 2 {
        pw = kp.pv.mul_x_pow(f, gap).add(f, &pw)?;
    }
    let shifted = kp.pv.mul_y_pow(f, gap);
    for mu in 0..=2 * d + 2 {
        let q = shifted.scale(f, &f.from_i64(mu as i64)).add(f, &pw)?;
        if !q.is_zero(f) && q.is_squarefree(f)? {
            return Ok((q.canonical(f), mu));
        }
    }
    Err(Error::Internal(format!("no square-free kernel polynomial among {} candidates", 2 * d + 3)))
}

/// `P_mu P_v + P_w` with `P_mu` interpolated so that the result vanishes
/// at the given points.
pub fn q_through_points<F: Field>(f: &F, kp: &KernelPair<F::Elem>, points: &[ProjPoint<F::Elem>]) -> Result<BivariatePoly<F::Elem>> {
    let gap = kp.n2 - kp.n1;
    if points.len() != gap + 1 {
        return Err(Error::DimensionMismatch { expected: gap + 1, got: points.len() });
    }
    let one = f.one();
    let zero = f.zero();
    let mut lead = None;
    let mut pairs = Vec::with_capacity(points.len());
    for p in points {
        match p {
            ProjPoint::Infinity => {
                if lead.is_some() {
                    return Err(Error::DuplicatePoint("(1:0)".into()));
                }
                let pv = kp.pv.eval(f, &one, &zero);
                let inv = f.inv(&pv).ok_or_else(|| Error::InvalidArgument("(1:0) is a root of P_v".into()))?;
                lead = Some(f.neg(&f.mul(&kp.pw.eval(f, &one, &zero), &inv)));
            }
            ProjPoint::Finite(alpha) => {
                let pv = kp.pv.eval(f, alpha, &one);
                let inv = f.inv(&pv).ok_or_else(|| Error::InvalidArgument(format!("{} is a root of P_v", f.format(alpha))))?;
                pairs.push((alpha.clone(), f.neg(&f.mul(&kp.pw.eval(f, alpha, &one), &inv))));
            }
        }
    }
    let mu = match lead {
        None => interpolate(f, &pairs)?,
        Some(c) => {
            let top = Poly::monomial(f, c, gap);
            let adjusted: Vec<_> = pairs.iter().map(|(x, y)| (x.clone(), f.sub(y, &top.eval(f, x)))).collect();
            interpolate(f, &adjusted)?.add(f, &top)
        }
    };
    let p_mu = BivariatePoly::homogenize(f, &mu, gap)?;
    p_mu.mul(f, &kp.pv).add(f, &kp.pw)
}

/// Monte Carlo construction of `Q` verified for square-freeness. The first
/// attempt uses `points` when given; later attempts draw distinct small
/// integers that are not roots of `P_v`. Returns `Q` and the number of
/// attempts used.
pub fn build_q_interpolated<F: Field>(
    f: &F,
    kp: &KernelPair<F::Elem>,
    points: Option<&[ProjPoint<F::Elem>]>,
    seed: u64,
    budget: usize,
) -> Result<(BivariatePoly<F::Elem>, usize)> {
    require_non_squarefree(f, kp)?;
    draw_q(f, kp, points, seed, budget)
}

fn draw_q<F: Field>(
    f: &F,
    kp: &KernelPair<F::Elem>,
    points: Option<&[ProjPoint<F::Elem>]>,
    seed: u64,
    budget: usize,
) -> Result<(BivariatePoly<F::Elem>, usize)> {
    let need = kp.n2 - kp.n1 + 1;
    let d = kp.n1 + kp.n2;
    let one = f.one();
    let radius = (d + 4) as i64;
    let pool: Vec<F::Elem> = (-radius..=radius)
        .map(|x| f.from_i64(x))
        .filter(|x| !f.is_zero(&kp.pv.eval(f, x, &one)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 1..=budget {
        let pts: Vec<ProjPoint<F::Elem>> = match (attempt, points) {
            (1, Some(p)) => p.to_vec(),
            _ => {
                if pool.len() < need {
                    return Err(Error::Internal("point pool smaller than the interpolation size".into()));
                }
                pool.choose_multiple(&mut rng, need).cloned().map(ProjPoint::Finite).collect()
            }
        };
        let q = q_through_points(f, kp, &pts)?;
        if !q.is_zero(f) && q.is_squarefree(f)? {
            return Ok((q.canonical(f), attempt));
        }
        last = format!("attempt {attempt} produced {}", q.display(f));
    }
    Err(Error::RetryBudgetExhausted { attempts: budget, detail: last })
}

/// `T`, `Q'` and the optional `x^D` weight for a square-free kernel
/// polynomial `Q` of `f`. The returned decomposition has the rank fields
/// set from `deg Q` alone; [`fast_decompose`] fills in the rest.
pub fn symbolic_lambda<F: Field>(f: &F, form: &BinaryForm<F::Elem>, q: &BivariatePoly<F::Elem>) -> Result<SymbolicDecomposition<F::Elem>> {
    let r = q.degree();
    let d = form.degree();
    if r == 0 || r > d {
        return Err(Error::Precondition(format!("kernel polynomial degree {r} outside 1..={d}")));
    }
    if !q.is_squarefree(f)? {
        return Err(Error::NotSquareFree);
    }
    if !in_kernel(f, form.normalized(), q)? {
        return Err(Error::Precondition("Q is not in the kernel of H_a^r".into()));
    }
    Ok(weights(f, form, q))
}

/// `T`, `Q'` and `lambda_inf` for a `Q` already known to be a square-free
/// kernel polynomial of degree `1..=D`.
fn weights<F: Field>(f: &F, form: &BinaryForm<F::Elem>, q: &BivariatePoly<F::Elem>) -> SymbolicDecomposition<F::Elem> {
    let r = q.degree();
    let d = form.degree();
    let a = form.normalized();
    let y_divides = q.y_valuation(f) == Some(1);
    let (base, rr) = if y_divides { (q.div_y(f).expect("y divides Q"), r - 1) } else { (q.clone(), r) };
    let qx = base.dehomogenize(f).monic(f);
    let rpoly = Poly::from_coeffs(f, (1..=rr).map(|i| a[rr - i].clone()).collect());
    let t = qx.mul(f, &rpoly).shr(rr);
    let dq = qx.derivative(f);
    let lambda_inf = y_divides.then(|| {
        // a_D + sum_i q_i a_(D-r+1+i) over the monic qx = x^(r-1) + sum q_i x^i
        (0..rr).fold(a[d].clone(), |acc, i| f.add(&acc, &f.mul(&qx.coeff(f, i), &a[d - rr + i])))
    });
    SymbolicDecomposition {
        rank: r,
        border_rank: r,
        unique: false,
        n1: 0,
        n2: 0,
        q: q.canonical(f),
        y_divides,
        qx,
        t,
        dq,
        lambda_inf,
        mu0: None,
    }
}

/// The whole pipeline: kernel pair, rank, `Q` and the symbolic weights.
pub fn fast_decompose<F: Field>(f: &F, form: &BinaryForm<F::Elem>, strategy: Strategy, seed: u64) -> Result<SymbolicDecomposition<F::Elem>> {
    if form.degree() == 1 {
        return linear_decomposition(f, form);
    }
    let kp = kernel_pair(f, form)?;
    decompose_with_pair(f, form, &kp, strategy, seed)
}

pub fn decompose_with_pair<F: Field>(
    f: &F,
    form: &BinaryForm<F::Elem>,
    kp: &KernelPair<F::Elem>,
    strategy: Strategy,
    seed: u64,
) -> Result<SymbolicDecomposition<F::Elem>> {
    let pv_squarefree = kp.pv.is_squarefree(f)?;
    let (rank, unique) = if pv_squarefree { (kp.n1 + 1, kp.n1 < kp.n2) } else { (kp.n2 + 1, false) };
    let (q, mu0) = if pv_squarefree {
        (kp.pv.clone(), None)
    } else {
        match strategy {
            Strategy::Deterministic => {
                let (q, mu) = sweep(f, kp)?;
                (q, Some(mu))
            }
            Strategy::Interpolated => (draw_q(f, kp, None, seed, DEFAULT_RETRY_BUDGET)?.0, None),
        }
    };
    if !in_kernel(f, form.normalized(), &q)? {
        return Err(Error::Internal("constructed Q is not a kernel polynomial".into()));
    }
    let mut sd = weights(f, form, &q);
    if sd.rank != rank {
        return Err(Error::Internal(format!("Q has degree {} but the rank is {rank}", sd.rank)));
    }
    sd.border_rank = kp.n1 + 1;
    sd.unique = unique;
    sd.n1 = kp.n1;
    sd.n2 = kp.n2;
    sd.mu0 = mu0;
    Ok(sd)
}

/// `f = a_1 x + a_0 y` is its own decomposition, `Q = a_1 y - a_0 x`.
fn linear_decomposition<F: Field>(f: &F, form: &BinaryForm<F::Elem>) -> Result<SymbolicDecomposition<F::Elem>> {
    let a = form.normalized();
    let q = BivariatePoly::new(vec![a[1].clone(), f.neg(&a[0])]);
    let mut sd = symbolic_lambda(f, form, &q)?;
    sd.border_rank = 1;
    sd.unique = true;
    sd.n1 = 0;
    sd.n2 = 1;
    Ok(sd)
}

/// Normalized coefficients of `sum lambda_j (alpha_j x + y)^D`, plus
/// `lambda_inf x^D`.
pub fn expand_terms<F: Field>(f: &F, d: usize, terms: &[(F::Elem, F::Elem)], lambda_inf: Option<&F::Elem>) -> Vec<F::Elem> {
    let mut a = vec![f.zero(); d + 1];
    for (lambda, alpha) in terms {
        let mut pw = lambda.clone();
        for ai in a.iter_mut() {
            *ai = f.add(ai, &pw);
            pw = f.mul(&pw, alpha);
        }
    }
    if let Some(l) = lambda_inf {
        a[d] = f.add(&a[d], l);
    }
    a
}
