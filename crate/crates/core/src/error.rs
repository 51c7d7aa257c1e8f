use crate::ordered::ElementError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("negative input {0}: only nonnegative elements can be members")]
    NegativeInput(String),
    #[error("{0} is not a member of the monoid")]
    NotAMember(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Parse(String),
    #[error("search exhausted at depth {depth}: {what}")]
    SearchExhausted { depth: usize, what: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
