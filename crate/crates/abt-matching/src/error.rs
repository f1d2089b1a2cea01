use crate::graph::{EdgeId, VertexId};

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} is matched twice")]
    NotAMatching(VertexId),
    #[error("pair ({0}, {1}) is not an edge of the graph")]
    EdgeNotInGraph(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) appears twice")]
    ParallelEdge(VertexId, VertexId),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("path is not an augmenting path")]
    NotAugmenting,
    #[error("paths share vertex {0}")]
    PathsOverlap(VertexId),
    #[error("level of edge {0} is undefined")]
    Undefined(EdgeId),
    #[error("vertex {0} has no orthodox path")]
    NoOrthodoxPath(VertexId),
    #[error("vertex {0} has two respected parents")]
    RespectConflict(VertexId),
    #[error("({0} -> {1}) is not an EP edge")]
    NotEpEdge(VertexId, VertexId),
    #[error("vertex {1} is not a descendant of {0}")]
    NotDescendant(VertexId, VertexId),
    #[error("vertex {0} has no alternating path of the requested parity")]
    NoSuchParity(VertexId),
    #[error("invalid double path: {0}")]
    InvalidDoublePath(&'static str),
    #[error("subdivided edge ({0}, {1}) has exactly one matched end")]
    InconsistentSubdivision(VertexId, VertexId),
    #[error("epsilon must be a number in (0, 1) no smaller than 2^-20, got {0}")]
    InvalidEpsilon(String),
    #[error("instance too large for the oracle ({n} > {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("internal consistency violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
