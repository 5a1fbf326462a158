use thiserror::Error;

/// Errors produced by graph construction, spectral analysis and certification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge {{{0}, {1}}} appears more than once")]
    DuplicateEdge(usize, usize),

    #[error("edge {{{u}, {v}}} has non-positive or non-finite weight {w}")]
    BadWeight { u: usize, v: usize, w: f64 },

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertices must be distinct, got {0} twice")]
    EqualVertices(usize),

    #[error("s-pair coefficient must be a nonzero finite real, got {0}")]
    BadCoefficient(f64),

    #[error("state vector has zero or non-finite norm")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid cluster: {0}")]
    InvalidCluster(String),

    #[error("invalid attachment: {0}")]
    InvalidAttachment(String),

    #[error("operation requires an unweighted graph")]
    WeightedInput,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matching of size {m} does not fit in K_{n}")]
    MatchingTooLarge { n: usize, m: usize },

    #[error("cycle on 2^{k} vertices does not fit in K_{n}")]
    CycleTooLarge { n: usize, k: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequential join needs at least one part")]
    EmptyJoin,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("symmetric eigensolver failed to converge")]
    NoConvergence,

    #[error("states are parallel; use periodicity instead of transfer")]
    ParallelStates,

    #[error("transfer hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("graph JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
