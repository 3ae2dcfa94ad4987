use thiserror::Error;

use crate::graph::Cycle;
use crate::shearer::NotInRegion;
use crate::validate::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: loop edge on vertex `{name}`")]
    LoopEdge { line: usize, name: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph is not chordal: chordless cycle {:?}", .0.vertices)]
    NotChordal(Cycle),

    #[error("vertex {vertex} violates the perfect elimination property")]
    InvalidPeo { vertex: usize },

    #[error("vertex id {0} out of range")]
    InvalidVertex(usize),

    #[error("clique index {0} out of range")]
    InvalidClique(usize),

    #[error("unknown vertex name `{0}`")]
    UnknownVertex(String),

    #[error("vertex {vertex} appears in more than one partition class")]
    OverlappingPartition { vertex: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("cycle of length {0} has no 2-chord (needs length >= 4)")]
    CycleTooShort(usize),

    #[error("no 2-chord found on cycle {0:?}")]
    NoTwoChord(Vec<usize>),

    #[error("vertex set {0:?} is not complete")]
    NotComplete(Vec<usize>),

    #[error("duplicate multigraph edge label {0}")]
    DuplicateLabel(usize),

    #[error("multigraph is disconnected after loop removal")]
    MultigraphDisconnected,

    #[error("not a clique tree: {0}")]
    NotACliqueTree(Violation),

    #[error("edge ({0}, {1}) is not an edge of the clique graph")]
    NotACliqueGraphEdge(usize, usize),

    #[error("invalid family choice for family {family}: {reason}")]
    InvalidChoice { family: usize, reason: String },

    #[error("{what}: {n} vertices exceeds the limit of {limit}")]
    SizeGate {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("{0}")]
    NotInRegion(NotInRegion),

    #[error("marginals are only on the boundary of the region (coupling is 1 at vertex {vertex})")]
    NotStrictlyInside { vertex: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("value at vertex {vertex} is not a probability: {value}")]
    InvalidProbability { vertex: usize, value: String },

    #[error("invalid order: {0}")]
    InvalidOrder(String),
}
