use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: wrong shapes, out-of-range arguments, failed invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A joint Hilbert space larger than the configured cap.
    #[error("sizing error: dimension {requested} exceeds the cap of {cap}")]
    Sizing { requested: usize, cap: usize },

    #[error("numerical error: {0}")]
    Numerical(String),

    /// The caller asked for a closed form outside its domain of validity.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
