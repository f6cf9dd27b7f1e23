use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the number of complex directions n-1 must be at least 1")]
    ZeroRank,
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown report format `{0}` (expected json or markdown)")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
