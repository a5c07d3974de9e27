//! Error type shared by the whole crate.
//!
//! Variant names are stable identifiers: the CLI reports them verbatim and
//! callers match on them, so renaming one is a breaking change.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("LengthMismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("NotDominated: {minuend} does not dominate {subtrahend}")]
    NotDominated { minuend: String, subtrahend: String },

    #[error("SyntaxError: {message} (at byte {pos})")]
    SyntaxError { pos: usize, message: String },

    #[error("NotHomogeneous: term of degree {found} conflicts with degree {expected}")]
    NotHomogeneous { expected: usize, found: usize },

    #[error("WrongVariable: x{index} exceeds the ambient variables x0..x{max}")]
    WrongVariable { index: usize, max: usize },

    #[error("DegreeMismatch: degree {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("VariableMismatch: {left} variables vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("DimensionMismatch: expected {expected} columns, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("AmbientMismatch: expected ambient (n={n}, e={e}), got (n={got_n}, e={got_e})")]
    AmbientMismatch { n: usize, e: usize, got_n: usize, got_e: usize },

    #[error("OrderOutOfRange: k = {k} outside 0..={max}")]
    OrderOutOfRange { k: usize, max: usize },

    #[error("NotContained: derivative at index {index} lies outside the target span")]
    NotContained { index: String },

    #[error("DegenerateBasis: generators span dimension {rank}, need {needed}")]
    DegenerateBasis { rank: usize, needed: usize },

    #[error("SymmetryViolated: {count} relation symmetry violations, first at {first}")]
    SymmetryViolated { count: usize, first: String },

    #[error("ZeroPolynomial: operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("ConfigInvalid: {0}")]
    ConfigInvalid(String),

    #[error("Io: {0}")]
    Io(String),

    #[error("Json: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
