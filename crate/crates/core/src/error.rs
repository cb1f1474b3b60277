use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("malformed quiver: {0}")]
    Quiver(String),
    #[error("malformed presentation: {0}")]
    Presentation(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("representation does not satisfy the relations: {0}")]
    Representation(String),
    #[error("zero module not allowed here")]
    ZeroModule,
    #[error("decomposition unresolved after {0} attempts")]
    DecompositionUnresolved(usize),
    #[error("outside the oracle domain: {0}")]
    OracleDomain(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid budget: {0}")]
    Budget(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
