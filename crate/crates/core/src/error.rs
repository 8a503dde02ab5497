use thiserror::Error;

use crate::diagram::{EdgeId, NodeId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge endpoints must differ (self-loop on node {0})")]
    SelfLoop(NodeId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("arity mismatch: {left} outputs composed with {right} inputs")]
    ArityMismatch { left: usize, right: usize },
    #[error("tensor shape mismatch: rank {left} vs rank {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("spiders {0} and {1} have different colors")]
    KindMismatch(NodeId, NodeId),
    #[error("spiders {0} and {1} share no plain edge")]
    NotAdjacent(NodeId, NodeId),
    #[error("fusing {0} and {1} would leave a Hadamard self-loop")]
    WouldSelfLoop(NodeId, NodeId),
    #[error("rule precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("constant-or-balanced promise violated: {0}")]
    NotPromise(String),
    #[error("circuit width {0} exceeds the dense simulation limit")]
    WidthTooLarge(usize),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("diagram is not graph-like: {0}")]
    NotGraphLike(String),
    #[error("pattern is not a disjoint union of paths: {0}")]
    NotChain(String),
    #[error("lattice reduction stuck at qubit {0}")]
    ReductionStuck(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
