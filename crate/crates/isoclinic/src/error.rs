//! Error taxonomy shared by every module.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input violates an operation's domain (bad shape, bad parameter).
    #[error("domain error: {0}")]
    Domain(String),

    /// Column set does not have full rank at the working tolerance.
    #[error("rank deficient: numerical rank {rank} but {cols} columns supplied")]
    RankDeficient { rank: usize, cols: usize },

    /// A factorization did not converge or produced inconsistent output.
    /// Signals defective numerics, not bad input.
    #[error("factorization error: {0}")]
    Factorization(String),

    /// A required precondition (correctability, isoclinicity) does not hold.
    #[error("precondition not satisfied: {0}")]
    Precondition(String),

    /// The error model is degenerate: restricted operators are linearly
    /// dependent or some diagonal coefficient vanishes.
    #[error("degenerate error model: {0}")]
    Degenerate(String),

    /// Malformed on-disk data.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
