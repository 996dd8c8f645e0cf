use thiserror::Error;

/// Errors raised by constructions in this crate.
///
/// Law violations are never errors: they are reported through
/// [`LawReport`](crate::report::LawReport) entries carrying a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("{what} exceeds cap: {got} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
    #[error("operation requires a non-trivial quantale (k = bottom)")]
    TrivialQuantale,
    #[error("operation requires a finite-table quantale")]
    NotFinite,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("at chain level {level}: {inner}")]
    AtLevel { level: usize, inner: Box<Error> },
}

impl Error {
    pub(crate) fn cap(what: &'static str, limit: usize, got: usize) -> Self {
        Error::CapExceeded { what, limit, got }
    }

    /// True for [`Error::CapExceeded`], also when wrapped in a level.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::CapExceeded { .. } => true,
            Error::AtLevel { inner, .. } => inner.is_cap(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
