//! Rendering: fixed-width tables for people, single JSON documents for
//! machines. Counts are always decimal strings in JSON; no value is ever a
//! float.

use serde::Serialize;

/// Left-aligned fixed-width table with a header row.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let mut out = String::new();
    let push_row = |cells: Vec<&str>, out: &mut String| {
        for (j, cell) in cells.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            if j + 1 < cells.len() {
                for _ in cell.len()..widths[j] {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    };
    push_row(headers.to_vec(), &mut out);
    for row in rows {
        push_row(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

pub fn yes_no(v: bool) -> String {
    if v { "yes".into() } else { "no".into() }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("output documents always serialize")
}

#[derive(Serialize)]
pub struct CountDoc {
    pub family: String,
    pub q: u64,
    pub n: u64,
    pub theorem: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<String>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Serialize)]
pub struct VerifyRowDoc {
    pub family: String,
    pub theorem: String,
    pub formula: String,
    pub brute: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub q: u64,
    pub n: u64,
    pub rows: Vec<VerifyRowDoc>,
    pub all_match: bool,
}

#[derive(Serialize)]
pub struct TripleDoc {
    pub i: usize,
    pub a: u8,
    pub b: u8,
}

#[derive(Serialize)]
pub struct AnalyzeDoc {
    pub q: u64,
    pub n: usize,
    pub anf: Vec<crate::format::TermRecord>,
    pub anf_string: String,
    pub degree: i64,
    pub variable_degrees: Vec<i64>,
    pub essential_variables: Vec<usize>,
    pub triples: Vec<TripleDoc>,
}

#[derive(Serialize)]
pub struct IdentityRowDoc {
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Serialize)]
pub struct IdentityDoc {
    pub rows: Vec<IdentityRowDoc>,
    pub all_match: bool,
}

#[derive(Serialize)]
pub struct RatioDoc {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Serialize)]
pub struct AsymptoteDoc {
    pub family: String,
    pub q: u64,
    pub n: u64,
    pub count: String,
    pub asymptote: String,
    pub ratio: RatioDoc,
    pub decimal: String,
}

#[derive(Serialize)]
pub struct BoundDoc {
    pub q: u64,
    pub n: u64,
    pub count: String,
    pub bound: String,
    pub holds: bool,
}
