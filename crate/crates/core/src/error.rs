use thiserror::Error;

/// Errors produced by measure, shift and family operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum ShiftError {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate measure: {0}")]
    DegenerateMeasure(String),

    #[error("not extendable: {0}")]
    NotExtendable(String),

    #[error("threshold violation: {0}")]
    ThresholdViolation(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("shift is not commuting: witness at ({0}, {1})")]
    NotCommuting(u32, u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ShiftError>;
