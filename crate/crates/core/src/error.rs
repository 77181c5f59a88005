use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParkError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration of {size} vectors exceeds the guard of {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = ParkError> = std::result::Result<T, E>;
