use thiserror::Error;

/// Everything that can go wrong while building or checking structures.
///
/// Failed identities are not errors: they are reported through
/// [`Certificate`](crate::Certificate) residuals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },

    #[error("literal zero denominator at byte {offset}")]
    ZeroDenominatorLiteral { offset: usize },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("tensor is degenerate (determinant vanishes identically)")]
    Degenerate,

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// Two independent evaluation routes disagreed. This always indicates a bug
    /// (or a theorem failing), never bad input.
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown tensor `{0}`")]
    UnknownTensorName(String),

    #[error("tensor `{name}` has variance {found}, expected {expected}")]
    VarianceMismatch {
        name: String,
        expected: String,
        found: String,
    },

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
