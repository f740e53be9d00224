use thiserror::Error;

use crate::qlaurent::LaurentPoly;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division, remainder {remainder}")]
    NotDivisible { remainder: LaurentPoly },

    #[error("exponent q^({exponent}/4) is not an integral power of q")]
    FractionalExponent { exponent: i64 },

    #[error("quarter offsets {left} and {right} differ by a non-multiple of 4")]
    OffsetMismatch { left: i64, right: i64 },

    #[error("level {requested} is outside 1..={available}")]
    LevelOutOfRange { requested: usize, available: usize },

    #[error("truncation level {level} is below the root order {order}")]
    LevelTooLow { level: usize, order: u64 },

    #[error("root order {0} is even; only odd orders are supported")]
    EvenOrder(u64),

    #[error("index constraint violated: {0}")]
    IndexOrder(String),

    #[error("knot oracle supports k <= {available}, but k = {needed} is required")]
    OracleTooShort { needed: usize, available: usize },

    #[error("cyclotomic coefficient {index} is not a Laurent polynomial")]
    NotLaurent { index: usize },

    #[error("descendant rewriting failed: {0}")]
    RewriteFailure(String),

    #[error("family members are at different levels ({0} vs {1})")]
    LevelMismatch(usize, usize),

    #[error("knot data invalid at k = {index}: {reason}")]
    InvariantViolation { index: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
