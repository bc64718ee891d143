use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlexError {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("constraint violation [{tag}]: {msg}")]
    Constraint { tag: String, msg: String },
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, FlexError>;
