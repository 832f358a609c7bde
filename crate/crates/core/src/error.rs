//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate triangle: collinear vertices")]
    DegenerateTriangle,
    #[error("invalid configuration: {0}")]
    Configuration(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("precision exhausted after {safe_depth} partial quotients")]
    PrecisionExhausted { safe_depth: usize },
    #[error("ray does not cross the vector fan")]
    NoCrossing,
}

pub type Result<T> = std::result::Result<T, Error>;
