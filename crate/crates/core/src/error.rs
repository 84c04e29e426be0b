use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes when specializing to {0}")]
    PoleAtSpecialization(String),
    #[error("operands belong to different algebra configurations")]
    ConfigMismatch,
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
