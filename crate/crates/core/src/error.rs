use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),

    #[error("invalid algebra signature: {0}")]
    InvalidSignature(String),

    #[error("element {0} is not a unit")]
    NotUnit(String),

    #[error("element {0} is not in the maximal ideal")]
    NotNilpotent(String),

    #[error("series is not invertible: every coefficient is nilpotent")]
    NotInvertible,

    #[error("insufficient truncation: need order {needed}, have {have}")]
    InsufficientTruncation { needed: i64, have: i64 },

    #[error("tame symbol requires the trivial algebra (degree 1), got degree {0}")]
    NontrivialAlgebra(usize),

    #[error("point {0} lies on the divisor support")]
    OnSupport(String),

    #[error("path passes within {distance:e} of a pole at {pole}")]
    PoleProximity { pole: String, distance: f64 },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("loop construction failed: {0}")]
    LoopConstruction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
