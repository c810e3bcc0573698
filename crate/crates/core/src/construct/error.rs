use thiserror::Error;

use crate::error::GeomError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown object `{0}`")]
    UnknownName(String),
    #[error("object `{0}` is already defined")]
    DuplicateName(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("unknown macro `{0}`")]
    UnknownMacro(String),
    #[error("{what}: expected {expected}, got {found}")]
    Arity {
        what: String,
        expected: String,
        found: usize,
    },
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("assertion failed: {description}: measured {measured}, expected {expected} (tolerance {tolerance:.1e})")]
    AssertFailed {
        description: String,
        measured: f64,
        expected: f64,
        tolerance: f64,
    },
    #[error("postcondition of `{macro_name}` failed: {check}: measured {measured}, expected {expected} (tolerance {tolerance:.1e})")]
    Postcondition {
        macro_name: String,
        check: String,
        measured: f64,
        expected: f64,
        tolerance: f64,
    },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl ConstructError {
    /// True when the construction ran but a checked property did not hold.
    pub fn is_assertion_failure(&self) -> bool {
        matches!(
            self,
            ConstructError::AssertFailed { .. } | ConstructError::Postcondition { .. }
        )
    }
}

/// An error tagged with the script line it came from.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {error}")]
pub struct ProgramError {
    pub line: usize,
    pub error: ConstructError,
}
