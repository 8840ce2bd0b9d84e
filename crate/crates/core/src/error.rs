use thiserror::Error;

/// Errors raised by the arithmetic, matrix and sequence layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cannot substitute zero for t{var}, which appears with a negative exponent")]
    Evaluation { var: usize },

    #[error("matrix order {n} exceeds the oracle bound {bound}")]
    OracleBound { n: usize, bound: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
