use thiserror::Error;

/// Errors shared across the crate.
///
/// Domain violations (arguments outside a documented precondition) and shape
/// mismatches (profiles from different cubes, wrong side) are the common
/// cases; the rest cover I/O, parsing, and algorithmic failure modes that a
/// caller may want to distinguish.
#[derive(Error, Debug)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Mismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("witness fails verification: {0}")]
    InvalidWitness(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("simplex pivot cap of {cap} exceeded")]
    PivotCap { cap: usize },

    #[error("root bracket [{lo}, {hi}] for degree {degree} does not change sign")]
    BadBracket { degree: usize, lo: f64, hi: f64 },

    #[error("problem size too large: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
