use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("class refers to exceptional divisor {index}, space has {available}")]
    ClassMismatch { index: usize, available: usize },
    #[error("{0} is not integral")]
    NonIntegral(String),
    #[error("{0} is outside the effective cone")]
    NotEffective(String),
    #[error("2g - 2 = {0} is odd")]
    Parity(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("restriction mismatch for {pair}: surface {surface}, ambient {ambient}")]
    Restriction { pair: String, surface: i64, ambient: i64 },
    #[error("cremona reduction did not terminate for {0}")]
    Reduction(String),
}
