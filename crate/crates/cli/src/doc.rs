//! JSON documents read and written by the command-line tool.
//!
//! Scalars are strings (`"p/q"`, `"p"`, or exact decimals for ball
//! components) so big rationals and high-precision midpoints survive a
//! round trip unchanged.

use serde::{Deserialize, Serialize};
use waring_core::numeric::{residual_norms, BallDoc, NumericDecomposition};
use waring_core::{BigRational, BinaryForm, BivariatePoly, Field, Poly, SymbolicDecomposition};

use crate::CliError;

/// `{"degree": D, "coeffs": [...]}` or `{"degree": D, "normalized": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Vec<String>>,
}

impl FormDocument {
    pub fn normalized<F: Field>(f: &F, form: &BinaryForm<F::Elem>) -> Self {
        FormDocument { degree: form.degree(), coeffs: None, normalized: Some(form.normalized().iter().map(|c| f.format(c)).collect()) }
    }

    pub fn coeffs<F: Field>(f: &F, form: &BinaryForm<F::Elem>) -> Self {
        FormDocument { degree: form.degree(), coeffs: Some(form.coeffs(f).iter().map(|c| f.format(c)).collect()), normalized: None }
    }

    pub fn to_form<F: Field>(&self, f: &F) -> Result<BinaryForm<F::Elem>, CliError> {
        let (values, is_coeffs) = match (&self.coeffs, &self.normalized) {
            (Some(c), None) => (c, true),
            (None, Some(a)) => (a, false),
            (Some(_), Some(_)) => return Err(CliError::Input("form has both \"coeffs\" and \"normalized\"".into())),
            (None, None) => return Err(CliError::Input("form needs \"coeffs\" or \"normalized\"".into())),
        };
        if values.len() != self.degree + 1 {
            return Err(CliError::Input(format!("degree {} needs {} coefficients, got {}", self.degree, self.degree + 1, values.len())));
        }
        let parsed = values.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>, _>>()?;
        let form = if is_coeffs { BinaryForm::from_coeffs(f, parsed)? } else { BinaryForm::from_normalized(f, parsed)? };
        Ok(form)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub lambda: BallDoc,
    pub alpha: BallDoc,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericBlock {
    pub requested_bits: u64,
    /// Bound on `max_i |c_i - c~_i|` over the monomial coefficients.
    pub residual_bound: String,
    /// Bound on `max_i |a_i - a~_i|` over the normalized coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_bound_normalized: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub working_precision: Option<u64>,
    pub terms: Vec<TermDoc>,
}

impl NumericBlock {
    pub fn new(nd: &NumericDecomposition, form: &BinaryForm<BigRational>) -> Self {
        let (_, normalized) = residual_norms(form, &nd.terms);
        NumericBlock {
            requested_bits: nd.requested_bits,
            residual_bound: nd.residual_bound.to_decimal(),
            residual_bound_normalized: Some(normalized.to_decimal()),
            working_precision: Some(nd.working_precision),
            terms: nd
                .terms
                .iter()
                .map(|t| TermDoc { lambda: t.lambda.to_doc(), alpha: t.alpha.to_doc(), at_infinity: t.at_infinity })
                .collect(),
        }
    }
}

/// Symbolic decomposition plus an optional certified numeric block.
///
/// `Q` lists the coefficients of `x^i y^(r-i)` for `i = 0..=r`; `T` and
/// `dQ` are univariate in `x`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub rank: usize,
    pub border_rank: usize,
    pub unique: bool,
    #[serde(rename = "N1", default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    #[serde(rename = "N2", default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    #[serde(rename = "dQ")]
    pub dq: Vec<String>,
    pub y_divides: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_inf: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericBlock>,
}

impl DecompositionDocument {
    pub fn symbolic<F: Field>(f: &F, field: &str, sd: &SymbolicDecomposition<F::Elem>) -> Self {
        DecompositionDocument {
            field: Some(field.to_string()),
            rank: sd.rank,
            border_rank: sd.border_rank,
            unique: sd.unique,
            n1: Some(sd.n1),
            n2: Some(sd.n2),
            q: sd.q.format(f),
            t: sd.t.format(f),
            dq: sd.dq.format(f),
            y_divides: sd.y_divides,
            lambda_inf: sd.lambda_inf.as_ref().map(|l| f.format(l)),
            mu0: sd.mu0,
            numeric: None,
        }
    }

    pub fn q_poly<F: Field>(&self, f: &F) -> Result<BivariatePoly<F::Elem>, CliError> {
        Ok(BivariatePoly::new(parse_all(f, &self.q)?))
    }

    pub fn t_poly<F: Field>(&self, f: &F) -> Result<Poly<F::Elem>, CliError> {
        Ok(Poly::from_coeffs(f, parse_all(f, &self.t)?))
    }

    pub fn dq_poly<F: Field>(&self, f: &F) -> Result<Poly<F::Elem>, CliError> {
        Ok(Poly::from_coeffs(f, parse_all(f, &self.dq)?))
    }
}

fn parse_all<F: Field>(f: &F, v: &[String]) -> Result<Vec<F::Elem>, CliError> {
    Ok(v.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>, _>>()?)
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid {what}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use waring_core::{fast_decompose, numeric::decompose_numeric, Rationals, Strategy};

    #[test]
    fn form_roundtrip_both_bases() {
        let f = Rationals;
        let form = BinaryForm::from_normalized_i64(&f, &[1, 2, 3, 4, 5]).unwrap();
        for doc in [FormDocument::normalized(&f, &form), FormDocument::coeffs(&f, &form)] {
            let back: FormDocument = from_json(&to_json(&doc), "form").unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_form(&f).unwrap().normalized(), form.normalized());
        }
    }

    #[test]
    fn form_schema_violations() {
        let f = Rationals;
        for text in [
            r#"{"degree": 2, "coeffs": ["1", "2"]}"#,
            r#"{"degree": 1, "coeffs": ["1", "2"], "normalized": ["1", "2"]}"#,
            r#"{"degree": 1}"#,
            r#"{"degree": 1, "coeffs": ["0", "0"]}"#,
            r#"{"degree": 1, "coeffs": ["1/0", "1"]}"#,
        ] {
            let r = from_json::<FormDocument>(text, "form").and_then(|d| d.to_form(&f).map(|_| ()));
            assert!(r.is_err(), "{text}");
        }
        assert!(from_json::<FormDocument>(r#"{"degree": 1, "coeffs": [1, 2]}"#, "form").is_err());
        assert!(from_json::<FormDocument>(r#"{"degree": 1, "coeffs": ["1", "2"], "extra": 0}"#, "form").is_err());
    }

    #[test]
    fn decomposition_roundtrip() {
        let f = Rationals;
        let form = BinaryForm::from_normalized_i64(&f, &[1, 1, 1, 2]).unwrap();
        let sd = fast_decompose(&f, &form, Strategy::Deterministic, 0).unwrap();
        let mut doc = DecompositionDocument::symbolic(&f, "rational", &sd);
        doc.numeric = Some(NumericBlock::new(&decompose_numeric(&sd, &form, 64).unwrap(), &form));
        let back: DecompositionDocument = from_json(&to_json(&doc), "decomposition").unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.q_poly(&f).unwrap(), sd.q);
        assert_eq!(back.t_poly(&f).unwrap(), sd.t);
        assert_eq!(back.dq_poly(&f).unwrap(), sd.dq);
    }
}
