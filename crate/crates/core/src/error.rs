use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace vectors are linearly dependent")]
    DependentVectors,

    #[error("degree {degree} is beyond cutoff {cutoff}")]
    BeyondCutoff { degree: usize, cutoff: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The builder could not certify its own output. Always a bug.
    #[error("certification failed: {0}")]
    Certification(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error(transparent)]
    Format(#[from] crate::io::FormatError),
}
