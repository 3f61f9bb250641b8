use thiserror::Error;

/// Errors raised by constructors and operations of the three calculi.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched domains, codomains or arities.
    #[error("domain error: {0}")]
    Domain(String),
    /// An input violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An arity or carrier exceeds the configured bound.
    #[error("capacity exceeded: {what} is {value}, bound is {bound}")]
    Capacity {
        what: String,
        value: usize,
        bound: usize,
    },
    /// A composition product whose index set is not bounded.
    #[error("unbounded composition: {0}")]
    UnboundedComposition(String),
    /// An evaluation whose index set is not bounded.
    #[error("unbounded evaluation: {0}")]
    UnboundedEvaluation(String),
    #[error("unknown corpus id `{0}`")]
    UnknownId(String),
    /// Malformed interchange document.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn capacity(what: impl Into<String>, value: usize, bound: usize) -> Error {
    Error::Capacity {
        what: what.into(),
        value,
        bound,
    }
}
