use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("invalid rank {rank} for type {family}: allowed {allowed}")]
    InvalidRank {
        family: char,
        rank: usize,
        allowed: &'static str,
    },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
    #[error("vector is not in the root lattice")]
    NotInRootLattice,
    #[error("invalid height function: {0}")]
    InvalidHeight(String),
    #[error("vertex {0} is not a source")]
    NotSource(usize),
    #[error("parity violation at ({i},{p})")]
    Parity { i: usize, p: i64 },
    #[error("word is not a reduced expression of the longest element")]
    NotLongestWord,
    #[error("sequence is not adapted: letter at position {0} is not a source")]
    NotAdapted(usize),
    #[error("unknown root {0:?}")]
    UnknownRoot(Vec<i64>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
