use thiserror::Error;

/// Errors produced by the graph, Coxeter and reconstruction layers.
///
/// `Falsified` is kept apart from the other variants: it is raised when a
/// property that the construction guarantees fails on a concrete instance,
/// as opposed to bad input or exhausted budgets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("unsupported Coxeter label {label} between generators {i} and {j} (allowed: 1, 2, 3, infinity)")]
    UnsupportedLabel { i: usize, j: usize, label: u32 },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("subset is not spherical")]
    NotSpherical,

    #[error("enumeration cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },

    #[error("matrix is not a group element: {0}")]
    NotAGroupElement(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("falsification signal: {0}")]
    Falsified(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Serde(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
