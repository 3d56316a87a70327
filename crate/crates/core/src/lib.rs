//! Waring decomposition of binary forms.
//!
//! A binary form `f = sum_i C(D,i) a_i x^i y^(D-i)` is decomposed as a
//! minimal sum of `D`-th powers of linear forms. The pipeline runs a
//! half-GCD on `A = sum a_i x^i` against `x^(D+1)` to find the two
//! generators of the Hankel kernels of `f`, derives the rank from them,
//! builds a square-free kernel polynomial `Q` and returns the weights as
//! the rational function `T / Q'` evaluated at the roots of `Q`.
//!
//! ```
//! use waring_core::{decompose::fast_decompose, BinaryForm, Rationals, Strategy};
//!
//! let f = BinaryForm::from_normalized_i64(&Rationals, &[1, 2, 3, 4, 5]).unwrap();
//! let sd = fast_decompose(&Rationals, &f, Strategy::Deterministic, 0).unwrap();
//! assert_eq!((sd.rank, sd.border_rank, sd.unique), (4, 2, false));
//! ```

pub mod decompose;
pub mod euclid;
pub mod field;
pub mod form;
pub mod hankel;
mod ntt;
pub mod numeric;
pub mod oracle;
pub mod poly;

pub use decompose::{fast_decompose, Strategy, SymbolicDecomposition};
pub use euclid::{EgcdRow, SeekResult};
pub use field::{Field, PrimeField, Rationals, MERSENNE_61};
pub use form::{BinaryForm, BivariatePoly, Provenance};
pub use hankel::KernelPair;
pub use numeric::{CBall, Float, NumericDecomposition, NumericTerm};
pub use num_rational::BigRational;
pub use poly::{Degree, Poly};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("the zero form has no decomposition")]
    ZeroForm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("retry budget of {attempts} attempts exhausted: {detail}")]
    RetryBudgetExhausted { attempts: usize, detail: String },
    #[error("precision budget exhausted at {bits} bits (last residual bound {residual})")]
    PrecisionBudget { bits: u64, residual: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
