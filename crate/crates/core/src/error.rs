use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum CqgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra is not semisimple (degenerate trace form)")]
    NotSemisimple,
    #[error("star structure is not C*-realizable (indefinite canonical form)")]
    NotStarRealizable,
    #[error("state is not faithful: {0}")]
    NotFaithful(String),
    #[error("functional is not positive: {0}")]
    NotPositive(String),
    #[error("no invariant state exists (empty nullspace)")]
    NoInvariantState,
    #[error("invariant state is not unique (nullspace dimension {0})")]
    NonUnique(usize),
    #[error("singular transform: {0}")]
    Singular(String),
    #[error("ill-conditioned linear solve (condition number {0:.3e})")]
    IllConditioned(f64),
    #[error("not a projection (residual {0:.3e})")]
    NotProjection(f64),
    #[error("isotypic dimension {dim} is not an integer multiple of block size {block}")]
    NonIntegerRank { dim: f64, block: usize },
    #[error("map is not A-linear (residual {0:.3e})")]
    NotLinear(f64),
    #[error("map is not surjective (rank {rank} < {expected})")]
    NotSurjective { rank: usize, expected: usize },
    #[error("basis does not span a subalgebra (residual {0:.3e})")]
    NotSubalgebra(f64),
    #[error("Hopf subalgebra is not normal (residual {0:.3e})")]
    NotNormal(f64),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CqgError>;
