//! Feynman-style multigraphs and their combinatorics: power counting,
//! one-particle irreducibility, divergent-subgraph and spinney/wood
//! enumeration, contraction, detachment, canonical forms, and subtraction
//! degree functions.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so graphs can be analysed in parallel and
//! results never depend on evaluation order.

mod canonical;
mod contract;
mod degree;
#[allow(clippy::module_inception)]
mod graph;
mod json;
mod subgraph;

pub use canonical::fnv1a;
pub use degree::{
    critical_degree, validate_degree_function, DegreeFunction, DegreeReport, DegreeViolation,
};
pub use graph::{FeynmanGraph, PowerCounting, TheoryConfig};
pub use json::{graph_doc_to_json, parse_graph_doc, GraphDoc};
pub use subgraph::{EdgeSet, Spinney, Wood, DEFAULT_EDGE_CAP};

use thiserror::Error;

/// Errors raised while building or analysing graphs.
#[derive(Debug, Error)]
pub enum GraphError {
    /// A theory configuration violates its invariants.
    #[error("invalid theory `{name}`: {reason}")]
    InvalidTheory { name: String, reason: String },
    /// A graph was declared with no vertices.
    #[error("a graph needs at least one vertex")]
    EmptyGraph,
    /// The same vertex name was declared twice.
    #[error("vertex `{0}` is declared more than once")]
    DuplicateVertex(String),
    /// An edge or leg references a vertex that was never declared.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    /// A vertex has the wrong total degree for its theory.
    #[error("vertex `{vertex}` has degree {got}, but the theory valence is {expected}")]
    WrongValence { vertex: String, expected: u32, got: u32 },
    /// The internal edges do not connect all vertices.
    #[error("vertex `{isolated}` is not connected to vertex `{root}`")]
    Disconnected { isolated: String, root: String },
    /// Subgraph enumeration was asked to scan too many internal edges.
    #[error("graph has {count} internal edges; subgraph enumeration is capped at {cap}")]
    TooManyEdges { count: usize, cap: usize },
    /// An edge subset refers to an edge index the graph does not have.
    #[error("edge subset uses edge index {index}, but the graph has {count} edges")]
    EdgeOutOfRange { index: usize, count: usize },
    /// A set of subgraphs does not form a valid spinney.
    #[error("invalid spinney: {0}")]
    InvalidSpinney(String),
    /// A custom degree table has no entry for a required graph class.
    #[error("degree table has no entry for canonical form `{key}`")]
    MissingDegree { key: String },
    /// A degree was requested for a graph outside its domain.
    #[error("graph is not divergent (omega = {omega}); degree undefined")]
    NotDivergent { omega: i64 },
    /// A graph document could not be decoded.
    #[error("bad graph document: {0}")]
    BadDocument(String),
    /// A graph references a theory the document never declares.
    #[error("graph `{graph}` references undeclared theory `{theory}`")]
    UnknownTheory { graph: String, theory: String },
}
