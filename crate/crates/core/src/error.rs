use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0} is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("vertex sets overlap (e.g. at vertex {0})")]
    OverlappingSets(usize),

    #[error("empty vertex set not allowed here")]
    EmptySet,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A hypothesis required by the decomposition does not hold on the input.
    #[error("precondition violated: {hypothesis} ({detail})")]
    Precondition {
        hypothesis: &'static str,
        detail: String,
    },

    /// The decomposition rules could not assign a degree-5 vertex. On inputs
    /// satisfying the preconditions this indicates either an implementation
    /// bug or a genuine counterexample to the decomposition argument.
    #[error("certification failure: no decomposition rule applies at vertex {stuck_vertex}")]
    CertificationFailure { stuck_vertex: usize },

    #[error("invalid expansion seed: {0}")]
    InvalidSeed(String),

    #[error("block derivation found no template of kind {0}")]
    DerivationFailure(&'static str),

    #[error("assembly failure: {0}")]
    AssemblyFailure(String),

    #[error("splice failure at cut edge {0}-{1}: no attachment orientation is valid")]
    SpliceFailure(usize, usize),

    #[error("infeasible tree shape at edge {0}-{1}")]
    ShapeInfeasible(usize, usize),

    #[error("unsupported vertex count {0}: expected n = 14k (n >= 14) or n = 14k+8 (n >= 22)")]
    UnsupportedOrder(usize),

    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
