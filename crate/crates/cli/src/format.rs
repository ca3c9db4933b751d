//! The on-disk function format: a JSON record with `q`, `n`, and exactly one
//! of `table` (all q^n values in canonical index order) or `anf` (a list of
//! terms `{coeff, exps}`). Repeated exponent tuples add in the field.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use canalyze::field::make_field;
use canalyze::function::{AnfPolynomial, TruthTable};
use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub q: u64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub anf: Option<Vec<TermRecord>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: u64,
    pub exps: Vec<u64>,
}

impl FunctionFile {
    pub fn from_table(table: &TruthTable) -> FunctionFile {
        FunctionFile {
            q: table.q() as u64,
            n: table.n(),
            table: Some(table.values().iter().map(|&v| v as u64).collect()),
            anf: None,
        }
    }

    pub fn parse(text: &str) -> Result<FunctionFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad function file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function records always serialize")
    }

    /// Builds the truth table, whichever representation the record carries.
    pub fn into_table(&self) -> Result<TruthTable, CliError> {
        if self.n < 1 {
            return Err(CliError::Input("n must be at least 1".into()));
        }
        let field = Arc::new(make_field(self.q)?);
        let code = |v: u64| -> Result<u8, CliError> {
            if v < self.q && v <= u8::MAX as u64 {
                Ok(v as u8)
            } else {
                Err(CliError::Core(canalyze::Error::InvalidElement {
                    code: v,
                    q: self.q,
                }))
            }
        };
        match (&self.table, &self.anf) {
            (Some(values), None) => {
                let values = values
                    .iter()
                    .map(|&v| code(v))
                    .collect::<Result<Vec<u8>, CliError>>()?;
                Ok(TruthTable::new(field, self.n, values)?)
            }
            (None, Some(terms)) => {
                let mut owned: Vec<(u8, Vec<u8>)> = Vec::with_capacity(terms.len());
                for term in terms {
                    let exps = term
                        .exps
                        .iter()
                        .map(|&e| code(e))
                        .collect::<Result<Vec<u8>, CliError>>()?;
                    owned.push((code(term.coeff)?, exps));
                }
                let borrowed: Vec<(u8, &[u8])> =
                    owned.iter().map(|(c, e)| (*c, e.as_slice())).collect();
                let anf = AnfPolynomial::from_terms(field, self.n, &borrowed)?;
                Ok(anf.to_table())
            }
            _ => Err(CliError::Input(
                "function file must carry exactly one of `table` or `anf`".into(),
            )),
        }
    }
}

/// Nonzero terms of a polynomial in ascending index order.
pub fn anf_terms(anf: &AnfPolynomial) -> Vec<TermRecord> {
    let q = anf.q();
    anf.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(idx, &c)| {
            let mut rest = idx;
            let exps = (0..anf.n())
                .map(|_| {
                    let e = rest % q;
                    rest /= q;
                    e as u64
                })
                .collect();
            TermRecord {
                coeff: c as u64,
                exps,
            }
        })
        .collect()
}

/// Human rendering of a polynomial, highest index first, e.g.
/// `2*x1^4*x2 + 3*x2 + 1`.
pub fn anf_to_string(anf: &AnfPolynomial) -> String {
    let q = anf.q();
    let mut terms = Vec::new();
    for (idx, &c) in anf.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mut parts = Vec::new();
        let mut rest = idx;
        for var in 1..=anf.n() {
            let e = rest % q;
            rest /= q;
            match e {
                0 => {}
                1 => parts.push(format!("x{var}")),
                _ => parts.push(format!("x{var}^{e}")),
            }
        }
        if parts.is_empty() {
            terms.push(format!("{c}"));
        } else if c == 1 {
            terms.push(parts.join("*"));
        } else {
            let mut term = format!("{c}*");
            term.push_str(&parts.join("*"));
            terms.push(term);
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
