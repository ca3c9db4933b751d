//! Error type shared by all modules.

use core::fmt;

/// Everything that can go wrong when building fields, manipulating function
/// representations, or evaluating counting formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested field order has more than one prime factor, or is < 2.
    NotPrimePower { q: u64 },
    /// A table, enumeration, or formula evaluation would exceed the built-in
    /// size guards.
    SizeLimitExceeded { what: &'static str },
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// Variable index outside `1..=n`.
    IndexOutOfRange { index: usize, n: usize },
    /// Operands disagree on field order or variable count.
    DimensionMismatch,
    /// An element code is not in `0..q`.
    InvalidElement { code: u64, q: u64 },
    /// The function is not canalyzing for the requested `(i, a, b)`.
    NotCanalyzing,
    /// Canalyzing input values must be pairwise distinct.
    DuplicateInputValues,
    /// More input/output pairs than field elements.
    TooManyPairs { given: usize, q: u64 },
    /// Quotient polynomial degree in the pivot variable exceeds the bound
    /// imposed by the number of pairs.
    QuotientDegreeTooHigh { max: i64 },
    /// Malformed family pattern string.
    InvalidFamily(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrimePower { q } => write!(f, "{q} is not a prime power >= 2"),
            Error::SizeLimitExceeded { what } => write!(f, "size limit exceeded: {what}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::IndexOutOfRange { index, n } => {
                write!(f, "variable index {index} out of range 1..={n}")
            }
            Error::DimensionMismatch => write!(f, "field order or variable count mismatch"),
            Error::InvalidElement { code, q } => {
                write!(f, "element code {code} not in 0..{q}")
            }
            Error::NotCanalyzing => write!(f, "function is not canalyzing for this triple"),
            Error::DuplicateInputValues => write!(f, "canalyzing input values must be distinct"),
            Error::TooManyPairs { given, q } => {
                write!(f, "{given} input/output pairs exceed the field order {q}")
            }
            Error::QuotientDegreeTooHigh { max } => {
                write!(f, "quotient degree in the pivot variable exceeds {max}")
            }
            Error::InvalidFamily(msg) => write!(f, "invalid family pattern: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
