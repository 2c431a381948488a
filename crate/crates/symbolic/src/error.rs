use thiserror::Error;

use crate::tables::Mismatch;

#[derive(Debug, Error)]
pub enum SymbolicError {
    #[error("series truncated: coefficient of (s−1)^{needed} requested, known only through (s−1)^{known}")]
    Truncated { needed: i32, known: i32 },

    #[error("series cannot be inverted: {0}")]
    NotInvertible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{} coefficient(s) differ from the reference table", .0.len())]
    Mismatch(Vec<Mismatch>),

    #[error(transparent)]
    Core(#[from] divl1_core::Error),
}

pub type Result<T> = std::result::Result<T, SymbolicError>;
