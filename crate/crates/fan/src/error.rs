use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("undecided by grammar: {0}")]
    Undecided(String),
    #[error("terms live on different domains")]
    DomainMismatch,
    #[error("not meshing: {0}")]
    NotMeshing(String),
    #[error("refuter only applies to transversals")]
    NotTransversal,
    #[error("invalid term: {0}")]
    Invalid(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, FanError>;
