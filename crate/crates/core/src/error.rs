use thiserror::Error;

use crate::kernel::RatVec;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point {point:?} lies outside the domain: {reason}")]
    Domain { point: RatVec, reason: String },
    #[error("fiber is unbounded in the last coordinate")]
    Unbounded,
    #[error("trees are not adjacent")]
    NotAdjacent,
    #[error("theorem violated: {what} (witness {witness:?})")]
    TheoremViolation { what: String, witness: Option<RatVec> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
