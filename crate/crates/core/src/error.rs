use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instances differ in vertex count or kind")]
    MismatchedInstances,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid cover pair: {0}")]
    InvalidCover(String),
    #[error("n = {0} is too small, at least 3 vertices are required")]
    TooSmall(usize),
    #[error("n = {n} exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("subtour {0:?} induces no edges")]
    EmptyCut(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, Error>;
