use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("cone {0:?} is not a cone of the fan")]
    NotACone(Vec<usize>),
    #[error("cone {0:?} is not smooth")]
    NotSmooth(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("fan is not complete")]
    IncompleteFan,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("marking count n = {n} is out of range (need {min}..={max})")]
    MarkingCount { n: usize, min: usize, max: usize },
    #[error("invalid label set {members:?} for n = {n}: {reason}")]
    InvalidLabel {
        members: Vec<u32>,
        n: usize,
        reason: &'static str,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("configuration values are not pairwise distinct")]
    RepeatedPoints,
    #[error("{0}")]
    OutOfScope(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
