use thiserror::Error;

use crate::graph::FaultMode;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node {node} out of range for graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("invalid weight {weight} on edge ({u}, {v}): weights must be finite and strictly positive")]
    InvalidWeight { u: usize, v: usize, weight: f64 },

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("fault set mode {found:?} does not match the requested mode {expected:?}")]
    ModeMismatch { expected: FaultMode, found: FaultMode },

    #[error("work estimate {estimate} exceeds the cap of {cap} (fault set x pair) combinations")]
    WorkCapExceeded { estimate: u128, cap: u128 },

    #[error("base graph has girth {girth} but {required} is required; short cycle {cycle:?}")]
    GirthTooSmall {
        girth: usize,
        required: usize,
        cycle: Vec<usize>,
    },

    #[error("no base graph source reaches {target} nodes within a factor 2 (largest available: {largest})")]
    NoBaseGraph { target: usize, largest: String },

    #[error("registry graph {name}: {message}")]
    Registry { name: String, message: String },

    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),

    #[error("trace record {index} references edge ({u}, {v}) which is not in the input graph")]
    TraceUnknownEdge { index: usize, u: usize, v: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("walk count overflowed 128 bits")]
    Overflow,

    #[error("regularization failed: {reason}; cases taken {cases:?}")]
    Regularization { reason: String, cases: Vec<String> },
}

pub type Result<T> = std::result::Result<T, Error>;
