//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: usize },

    #[error("invalid label `{0}`; legal labels look like A3, BC2, A3(1), B2(2), G2(3)")]
    BadLabel(String),

    #[error("invalid scale `{0}`; expected a positive rational like 2 or 1/3")]
    BadScale(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is not a root of this system")]
    NotARoot(String),

    #[error("{0} is not a weight-lattice point of this system")]
    NotAWeight(String),

    #[error("capacity exceeded: operation needs {required}, cap is {cap}")]
    Capacity { required: u64, cap: u64 },

    #[error("series truncation insufficient: valid to {have}, need {need}")]
    Truncation { have: String, need: String },

    #[error("root-system axiom violated: {0}")]
    Axiom(String),

    #[error("singular matrix")]
    Singular,

    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
