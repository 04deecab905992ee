use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error)]
pub enum HatsError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("vertex `{0}` has hatness 0")]
    ZeroHatness(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("invalid strategy at vertex `{vertex}`, index {index}: {detail}")]
    InvalidStrategy {
        vertex: String,
        index: usize,
        detail: String,
    },
    #[error("arrangement count overflows: {0}")]
    Overflow(String),
    #[error("too large for exhaustive work: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format `{0}`")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = HatsError> = std::result::Result<T, E>;
