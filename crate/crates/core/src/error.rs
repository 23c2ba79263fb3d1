use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A feasible configuration contradicted the main lower-bound theorem.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("empty search space: {0}")]
    EmptySearch(String),
    #[error("cannot parse exact value {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
