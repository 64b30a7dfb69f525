use thiserror::Error;

/// Errors raised while constructing or verifying codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("generator polynomial does not divide z^{n} + 1")]
    NotCyclic { n: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("enumeration cost {needed} exceeds budget {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}
