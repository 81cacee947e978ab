use thiserror::Error;

use crate::graph::{Edge, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {0} has multiplicity zero")]
    ZeroMultiplicity(Edge),
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex set {0} does not induce a connected subgraph")]
    DisconnectedSet(VertexSet),
    #[error("graph6 cannot encode parallel edges")]
    NotSimple,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header")]
    Header,
    #[error("byte {0:#04x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("body has the wrong length")]
    Length,
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("expected an integer")]
    Integer,
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("multiplicity must be positive")]
    Multiplicity,
}

impl ParseError {
    pub(crate) fn at(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

/// Errors from structural queries whose preconditions are checked.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not {0}-connected")]
    NotKConnected(usize),
    #[error("graph is not minimally 3-connected")]
    NotMinimally3Connected,
    #[error("target sets larger than 3 are unsupported (got {0})")]
    TooManyTargets(usize),
    #[error("no cycle through {0} found")]
    NoCycle(VertexSet),
    #[error("{what} limited to {limit}, got {got}")]
    TooLarge { what: &'static str, limit: usize, got: usize },
    #[error("vertex set {0} is not independent")]
    NotIndependent(VertexSet),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0}")]
    Unsupported(String),
}
