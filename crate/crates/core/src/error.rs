use crate::num::Rational;
use thiserror::Error;

/// Errors shared across the crate. Operations that read table values outside
/// the stored window fail instead of extrapolating.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("position (row {row}, degree {degree}) is outside the window and no tail covers it")]
    OutOfWindow { row: usize, degree: i64 },

    #[error("window exhausted at (row {row}, degree {degree}); widen the window and rerun")]
    WindowExhausted { row: usize, degree: i64 },

    #[error("negative entry {value} at (row {row}, degree {degree}); no positive multiple of this table is the cohomology table of a coherent sheaf")]
    NonAdmissible {
        row: usize,
        degree: i64,
        value: Rational,
    },

    #[error("Euler characteristic is not a polynomial of degree <= {expected} on the window (nonzero difference at degree {at})")]
    NotPolynomial { expected: usize, at: i64 },

    #[error("row {row} has unknown or unbounded support supremum")]
    UnboundedRow { row: usize },

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("window [{lo}, {hi}] is too small: need at least {needed} degrees")]
    WindowTooSmall { lo: i64, hi: i64, needed: i64 },

    #[error("empty window: lo {lo} > hi {hi}")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("incompatible tables: {0}")]
    Incompatible(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the window of this fixture cannot cover [{lo}, {hi}]")]
    UnsupportedWindow { lo: i64, hi: i64 },

    #[error("operation requires a nonzero table")]
    ZeroTable,
}

pub type Result<T> = std::result::Result<T, Error>;
