use thiserror::Error;

use crate::diagram::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for size {size}")]
    Index { index: usize, size: usize },
    #[error("cannot compose: {0}")]
    Composition(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invalid diagram: {0}")]
    Validation(Report),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("signature error: {0}")]
    Signature(String),
    #[error("diagram is not globular")]
    NotGlobular,
    #[error("invalid content address {0:?}")]
    Address(Vec<usize>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
