use thiserror::Error;

use crate::graph::Vertex;
use crate::matching::Matching;

/// Errors raised by the library.
///
/// Everything except [`Error::InternalInvariant`] is a *domain* error: the
/// caller handed in something that violates an operation's precondition.
/// `InternalInvariant` means a structure that theory guarantees to exist (or
/// to verify) did not, and always indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("loop edge at vertex {0} is not allowed")]
    LoopEdge(Vertex),

    #[error("vertex {vertex} is out of range 1..={order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },

    #[error("shore must be a nonempty proper subset of the vertex set")]
    ImproperShore,

    #[error("shore has even cardinality {0}")]
    EvenShore(usize),

    #[error("graph is not matching covered")]
    NotMatchingCovered,

    #[error("cut is not tight")]
    NotTight { witness: Matching },

    #[error("cut is trivial")]
    TrivialCut,

    #[error("forced edges {0} and {1} share an endpoint")]
    SharedEndpoint(usize, usize),

    #[error("edge id {0} does not exist")]
    UnknownEdge(usize),

    #[error("shores intersect in an even number ({0}) of vertices")]
    EvenIntersection(usize),

    #[error("cuts belong to different graphs")]
    MismatchedGraphs,

    #[error("graph has {order} vertices, above the oracle bound {bound}")]
    SizeBound { order: usize, bound: usize },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInvariant(_))
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInvariant(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
