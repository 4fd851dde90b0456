use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vectors do not span the ambient space (rank {rank} < {dim})")]
    NotSpanning { rank: usize, dim: usize },
    #[error("zero vector at input index {0}")]
    ZeroVector(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point lies on a wall")]
    OnWall,
    #[error("vectors are linearly dependent")]
    Degenerate,
    #[error("index tuple is not a basis")]
    NotABasis,
    #[error("alpha is an element of sigma")]
    AlphaInSigma,
    #[error("point lies on a pole of the function")]
    SingularPoint,
    #[error("no chamber contains the given point")]
    ChamberNotFound,
    #[error("given chamber is not the one induced by delta")]
    ChamberMismatch,
    #[error("subset does not span a wall")]
    NotAWall,
    #[error("rank {0} is too large for chamber enumeration (maximum 3)")]
    RankTooLarge(usize),
    #[error("piecewise polynomial is not in the image of the inverse Laplace transform")]
    NotRepresentable,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
