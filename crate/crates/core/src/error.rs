use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed automaton: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{what} exceeded the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no stabilization within {0} steps")]
    NonStabilizing(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
