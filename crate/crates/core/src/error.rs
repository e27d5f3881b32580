use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the analysis library.
///
/// Parse errors live in [`crate::io::ParseError`]; everything here is
/// raised after a document has been read.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("empty graph")]
    EmptyGraph,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("edges `{first}` and `{second}` do not compose")]
    NotComposable { first: String, second: String },

    #[error("a path needs at least one edge")]
    EmptyPath,

    #[error("path length must be at least 1")]
    ZeroLength,

    #[error("power graph too large: {count} paths of length {length} exceed the cap of {cap}")]
    PowerGraphTooLarge {
        length: usize,
        count: u128,
        cap: usize,
    },

    #[error("power graph edge id `{0}` is ambiguous")]
    EdgeIdCollision(String),

    #[error("too many simple cycles: more than {cap}")]
    TooManyCycles { cap: usize },

    #[error("not a cycle: source and range differ")]
    NotACycle,

    #[error("lattice enumeration refused: {vertices} vertices exceed the cap of {cap}")]
    LatticeCapExceeded { vertices: usize, cap: usize },

    #[error("vectors live on different graphs")]
    GraphMismatch,

    #[error("path length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("sandwich needs a shorter middle path: {middle} >= {outer}")]
    SandwichLength { middle: usize, outer: usize },

    #[error("vertex weight for `{0}` is negative")]
    NegativeWeight(String),

    #[error("vertex weights are identically zero")]
    ZeroWeights,

    #[error("epsilon must be positive and at most the sup norm of the weights")]
    InvalidEpsilon,

    #[error("max_length ({max_length}) must exceed n ({n})")]
    InvalidMaxLength { n: usize, max_length: usize },

    #[error("a nonreturning set must be nonempty")]
    EmptySet,

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
