//! `waring verify`: independent checks of a decomposition document.
//!
//! The symbolic block is recomputed from `Q` and the form and compared
//! field by field, and the claimed rank is compared with the rank of the
//! form. The numeric block, when present, is expanded exactly over the
//! Gaussian rationals from the decimal midpoints.

use std::path::PathBuf;

use num_traits::One;
use waring_core::decompose::symbolic_lambda;
use waring_core::field::parse_rational;
use waring_core::numeric::Round;
use waring_core::oracle::{exact_terms_residual_sq, ExactTerm};
use waring_core::{BigRational, Field, Float, Rationals};

use crate::doc::{DecompositionDocument, FormDocument, NumericBlock};
use crate::{doc, rank_report, read_form_doc, read_input, CliError, FieldChoice, EXIT_OK};

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Form document.
    pub form: PathBuf,
    /// Decomposition document.
    pub decomposition: PathBuf,
    /// Required accuracy; defaults to the document's requested bits.
    #[arg(long)]
    pub bits: Option<u64>,
    /// Overrides the field recorded in the document.
    #[arg(long)]
    pub field: Option<FieldChoice>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub rank: usize,
    /// `max_i |c_i - c~_i|`, rounded up to a double; zero for a purely
    /// symbolic document.
    pub residual: f64,
    pub bits: Option<u64>,
}

pub fn verify_docs(form_doc: &FormDocument, dec: &DecompositionDocument, bits: Option<u64>, field: Option<FieldChoice>) -> Result<VerifyReport, CliError> {
    let field = match (field, &dec.field) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse().map_err(|e| CliError::Input(format!("document field: {e}")))?,
        (None, None) => FieldChoice::Rational,
    };
    match field {
        FieldChoice::Prime(p) => {
            if dec.numeric.is_some() || bits.is_some() {
                return Err(CliError::Input("numeric approximation requires rational field".into()));
            }
            check_symbolic(&p, form_doc, dec)?;
            Ok(VerifyReport { rank: dec.rank, residual: 0.0, bits: None })
        }
        FieldChoice::Rational => {
            check_symbolic(&Rationals, form_doc, dec)?;
            let Some(numeric) = &dec.numeric else {
                return Ok(VerifyReport { rank: dec.rank, residual: 0.0, bits });
            };
            let bits = bits.unwrap_or(numeric.requested_bits);
            let residual = check_numeric(form_doc, dec, numeric, bits)?;
            Ok(VerifyReport { rank: dec.rank, residual, bits: Some(bits) })
        }
    }
}

fn check_symbolic<F: Field>(f: &F, form_doc: &FormDocument, dec: &DecompositionDocument) -> Result<(), CliError> {
    let fail = |m: String| Err(CliError::Verification(m));
    let form = form_doc.to_form(f)?;
    let q = dec.q_poly(f)?;
    if q.degree() != dec.rank {
        return fail(format!("Q has degree {} but the document claims rank {}", q.degree(), dec.rank));
    }
    let sd = symbolic_lambda(f, &form, &q).map_err(|e| CliError::Verification(format!("Q is not a square-free kernel polynomial of the form: {e}")))?;
    if sd.t != dec.t_poly(f)? {
        return fail("T does not match the recomputed weights".into());
    }
    if sd.dq != dec.dq_poly(f)? {
        return fail("dQ does not match the derivative of Q".into());
    }
    if sd.y_divides != dec.y_divides {
        return fail(format!("y_divides is {} but Q says {}", dec.y_divides, sd.y_divides));
    }
    let lambda_inf = dec.lambda_inf.as_deref().map(|s| f.parse(s)).transpose()?;
    if lambda_inf != sd.lambda_inf {
        return fail("lambda_inf does not match the recomputed weight".into());
    }
    let truth = rank_report(f, form_doc)?;
    if truth.rank != dec.rank {
        return fail(format!("the form has rank {}, the document claims {}", truth.rank, dec.rank));
    }
    if truth.border_rank != dec.border_rank || truth.unique != dec.unique {
        return fail(format!(
            "border_rank/unique are {}/{}, expected {}/{}",
            dec.border_rank, dec.unique, truth.border_rank, truth.unique
        ));
    }
    Ok(())
}

fn exact_term(t: &doc::TermDoc) -> Result<ExactTerm, CliError> {
    let alpha = if t.at_infinity {
        (BigRational::one(), BigRational::from_integer(0.into()))
    } else {
        (parse_rational(&t.alpha.re)?, parse_rational(&t.alpha.im)?)
    };
    Ok(ExactTerm { lambda: (parse_rational(&t.lambda.re)?, parse_rational(&t.lambda.im)?), alpha, at_infinity: t.at_infinity })
}

fn check_numeric(form_doc: &FormDocument, dec: &DecompositionDocument, numeric: &NumericBlock, bits: u64) -> Result<f64, CliError> {
    let fail = |m: String| Err(CliError::Verification(m));
    let at_inf = numeric.terms.iter().filter(|t| t.at_infinity).count();
    if numeric.terms.len() != dec.rank {
        return fail(format!("the numeric block has {} terms but the rank is {}", numeric.terms.len(), dec.rank));
    }
    if at_inf != usize::from(dec.y_divides) {
        return fail(format!("{at_inf} terms at infinity, expected {}", usize::from(dec.y_divides)));
    }
    let form = form_doc.to_form(&Rationals)?;
    let terms = numeric.terms.iter().map(exact_term).collect::<Result<Vec<_>, _>>()?;
    let r2 = exact_terms_residual_sq(&form, &terms);
    let residual = Float::from_rational(&r2, 64, Round::Ceil).sqrt(64, Round::Ceil)?.to_f64();
    let scale = num_traits::pow(BigRational::from_integer(2.into()), 2 * bits as usize);
    if r2 * scale > BigRational::one() {
        return fail(format!("residual {residual:.6e} exceeds 2^-{bits}"));
    }
    Ok(residual)
}

pub fn run(args: &VerifyArgs) -> Result<i32, CliError> {
    let form_doc = read_form_doc(&args.form)?;
    let dec: DecompositionDocument = doc::from_json(&read_input(&args.decomposition)?, "decomposition document")?;
    let report = verify_docs(&form_doc, &dec, args.bits, args.field)?;
    match report.bits {
        Some(b) => println!("ok: rank {} residual {:.6e} <= 2^-{b}", report.rank, report.residual),
        None => println!("ok: rank {} exact symbolic decomposition", report.rank),
    }
    Ok(EXIT_OK)
}
