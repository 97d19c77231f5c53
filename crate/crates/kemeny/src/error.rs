use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge ({u}, {v}) already present")]
    EdgeAlreadyPresent { u: usize, v: usize },

    #[error("edge weight for ({u}, {v}) must be strictly positive")]
    NonPositiveWeight { u: usize, v: usize },

    #[error("weighted graphs are not supported by this operation")]
    WeightedUnsupported,

    #[error("{what} requires {required}, got {got}")]
    ParameterTooSmall {
        what: &'static str,
        required: &'static str,
        got: String,
    },

    #[error("empty chain")]
    EmptyChain,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("edge set invalid: {0}")]
    InvalidEdgeSet(String),

    #[error("hitting-time start values disagree; this indicates a bug")]
    HittingTimesInconsistent,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
