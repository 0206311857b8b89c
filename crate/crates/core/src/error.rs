use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid design parameters: {0}")]
    InvalidParams(String),

    #[error("s = {s} is outside 0..={t}")]
    SubsetSizeOutOfRange { s: u32, t: u32 },

    #[error("parameters are trivial (need t < k < v): {0}")]
    TrivialParams(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unknown filter `{0}`")]
    UnknownFilter(String),

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
}

pub type Result<T> = std::result::Result<T, Error>;
