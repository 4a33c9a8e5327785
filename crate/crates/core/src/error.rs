use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),

    #[error("{what} out of range: got {got}, expected {expected}")]
    OutOfRange {
        what: &'static str,
        got: i64,
        expected: &'static str,
    },

    #[error("coordinate count {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("vectors are not in canonical echelon shape: {0}")]
    NotEchelon(String),

    #[error("replacement polynomial contains the substituted variable")]
    SelfReferentialSubstitution,

    #[error("{0} has no Gaussian-rational square root")]
    NoSquareRoot(String),

    #[error("unknown family {0}, expected h1..h8")]
    UnknownFamily(String),

    #[error("family {0} needs a --point value for its free parameter")]
    MissingPoint(&'static str),

    #[error("invalid scalar literal: {0}")]
    InvalidScalar(String),
}

pub type Result<T> = std::result::Result<T, Error>;
