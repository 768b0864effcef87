use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed complex: {0}")]
    MalformedComplex(String),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("no solution")]
    NoSolution,

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
