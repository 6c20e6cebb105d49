use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group closure exceeded the size cap of {cap} elements")]
    SizeLimit { cap: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("catalog mismatch for {group}: {detail}")]
    CatalogMismatch { group: String, detail: String },
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("group mismatch between class functions")]
    GroupMismatch,
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("action is not effective: {0}")]
    NotCrystallographic(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("endomorphism rejected: abelianization has determinant {det}")]
    NotAutomorphism { det: i64 },
    #[error("order exceeds cap {cap}")]
    OrderCap { cap: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown group identifier {0:?}")]
    UnknownGroup(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
