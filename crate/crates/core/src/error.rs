use thiserror::Error;

/// Errors raised by the numeric and geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("infeasible construction: {0}")]
    Infeasible(String),
    #[error("a regular {n}-gon cannot be constructed with ruler and compass (see is_constructible_ngon)")]
    NotConstructible { n: u64 },
    #[error("a regular {n}-gon is constructible, but the macro library has no construction for it")]
    UnsupportedPolygon { n: u64 },
}

impl GeomError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GeomError::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        GeomError::Degenerate(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        GeomError::Infeasible(msg.into())
    }
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
