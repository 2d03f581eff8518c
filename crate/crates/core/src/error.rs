use thiserror::Error;

use crate::codeword::WordViolation;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("invalid pattern set: {0}")]
    InvalidPatternSet(String),

    /// The permutation contains a forbidden pattern; positions are 1-based.
    #[error("permutation contains forbidden pattern {pattern} at positions {}", join_positions(.positions))]
    ForbiddenPattern {
        pattern: String,
        positions: Vec<usize>,
    },

    #[error("invalid code word: {0}")]
    InvalidWord(WordViolation),

    #[error("invalid tail: {0}")]
    InvalidTail(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A frontier grew beyond the configured node budget.
    #[error("node budget of {budget} exceeded at length {length} (frontier reached {reached})")]
    BudgetExceeded {
        budget: usize,
        length: usize,
        reached: usize,
    },

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn join_positions(positions: &[usize]) -> String {
    positions
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
