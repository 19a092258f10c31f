//! Error types shared across the crate.

use thiserror::Error;

/// All failure modes surfaced by the library.
///
/// Variants split into two broad classes: invalid input (anything a caller
/// can fix) and [`Error::Consistency`], which signals that an internal
/// cross-check failed and the computed results must not be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A vertex id at or beyond the graph order.
    #[error("vertex {vertex} out of range for graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    /// An edge from a vertex to itself.
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    /// An operation that needs at least one vertex.
    #[error("graph has no vertices")]
    EmptyGraph,

    /// An operation defined only for connected graphs.
    #[error("graph is not connected")]
    NotConnected,

    /// A vertex pair with no connecting path.
    #[error("no path between vertices {u} and {v}")]
    DisconnectedPair { u: usize, v: usize },

    /// Input too large for an operation with a hard size guard.
    #[error("{op}: size {given} exceeds the supported limit {limit}")]
    SizeLimit {
        op: &'static str,
        given: usize,
        limit: usize,
    },

    /// A parameter outside an operation's documented domain.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// The graph is not a cactus; carries two cycles sharing an edge.
    #[error("not a cactus: cycles {0:?} and {1:?} share an edge")]
    NotCactus(Vec<usize>, Vec<usize>),

    /// A structural precondition of a transform does not hold.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// Malformed textual graph input, with a position for diagnostics.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// An internal cross-check failed; results are not trustworthy.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
