use thiserror::Error;

use crate::banach::ConditionFailure;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The supremum over distinct atom pairs is taken over an empty set.
    #[error("undefined supremum: {0}")]
    UndefinedSupremum(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector {index} has norm {norm}, which deviates from 1 by more than {tolerance:e}")]
    NotNormalized {
        index: usize,
        norm: f64,
        tolerance: f64,
    },

    #[error("vector {index} is zero and cannot be renormalized")]
    ZeroVector { index: usize },

    #[error("invalid optimizer config: {0}")]
    InvalidConfig(String),

    #[error("malformed document: {0}")]
    Format(String),

    /// Hypotheses of the functional bound fail; no verdict is given.
    #[error("precondition violated: {}", format_failures(.0))]
    Precondition(Vec<ConditionFailure>),
}

fn format_failures(failures: &[ConditionFailure]) -> String {
    failures
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
