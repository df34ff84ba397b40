use thiserror::Error;

use crate::solver::NonConvergence;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent p = {p} is not a positive even integer")]
    OddExponent { p: u32 },
    #[error("exponent {p} outside the admissible range: {reason}")]
    InvalidExponent { p: f64, reason: &'static str },
    #[error("degenerate quadrature grid: {0}")]
    DegenerateGrid(&'static str),
    #[error("kernel is identically zero")]
    ZeroKernel,
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("non-finite value produced while computing {0}")]
    NonFinite(&'static str),
    #[error(transparent)]
    NonConvergence(Box<NonConvergence>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Half of an even exponent, rejecting odd values and zero.
pub(crate) fn half_even(p: u32) -> Result<u32> {
    if p == 0 || !p.is_multiple_of(2) {
        return Err(Error::OddExponent { p });
    }
    Ok(p / 2)
}

pub(crate) fn finite(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}
