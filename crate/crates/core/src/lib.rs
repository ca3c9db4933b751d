//! Canalyzing functions over finite fields: analysis, construction, and
//! exact enumeration.
//!
//! A function `f: F_q^n -> F_q` is canalyzing when some variable has an
//! input value that forces the output on its own. This crate represents
//! such functions as truth tables and ANF polynomials, detects and
//! decomposes canalyzing structure, and counts the eight families obtained
//! by pinning or freeing each part of the witness `<i:a:b>` - with exact
//! big-integer formulas on one side and a definition-level brute-force
//! enumeration on the other.
//!
//! ```
//! use canalyze::{counting, FamilySpec};
//!
//! // All canalyzing functions on 3 Boolean variables.
//! let report = counting::count_formula(&FamilySpec::any(), 2, 3).unwrap();
//! assert_eq!(report.formula.to_string(), "120");
//! assert_eq!(report.formula, counting::count_brute(&FamilySpec::any(), 2, 3).unwrap());
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canalyzing;
pub mod counting;
pub mod error;
pub mod field;
pub mod function;
pub mod mix;

pub use canalyzing::{FamilySpec, Triple};
pub use error::Error;
pub use field::{make_field, Field};
pub use function::{AnfPolynomial, TruthTable};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
