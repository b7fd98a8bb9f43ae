use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("unsupported Hadamard order {order}; nearest supported orders are {below} and {above}")]
    UnsupportedOrder {
        order: usize,
        below: usize,
        above: usize,
    },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("vertices are affinely dependent")]
    Degenerate,
    #[error("empty spectrum")]
    EmptySpectrum,
    #[error("spectrum cannot be normalized: {0}")]
    NotNormalizable(String),
    #[error("necessary conditions fail: {0}")]
    ConditionsFail(String),
    #[error("not a Suleimanova spectrum: {0}")]
    NotSuleimanova(String),
    #[error("spectrum size {spectrum} does not match Hadamard order {order}")]
    OrderMismatch { spectrum: usize, order: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no constructive realization route: {0}")]
    NotSupported(String),
    #[error("internal dispatch failure: every candidate construction produced a negative entry")]
    InternalDispatchFailure,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
