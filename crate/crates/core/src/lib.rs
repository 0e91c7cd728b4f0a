//! Exact combinatorial renormalisation toolkit.
//!
//! The crate models scalar-theory Feynman graphs as labelled multigraphs,
//! enumerates their divergent one-particle-irreducible subgraphs, and runs
//! counterterm constructions (the classical preparation recursion and two
//! exponential recursions) over exact rational target algebras.  Everything
//! is deterministic: identical inputs and seeds produce identical results,
//! byte for byte.
//!
//! Layering, bottom to top:
//!
//! * [`graph`] — multigraphs, power counting, subgraph/spinney enumeration,
//!   contraction, subtraction-degree functions;
//! * [`algebra`] — Laurent series and momentum polynomials over exact
//!   rationals, Taylor-jet and pole projectors, subtraction schemes;
//! * [`hopf`] — the graded coalgebra of graph classes: sessions, forests,
//!   coproducts, convolution, characters;
//! * [`renorm`] — counterterm recursions, factorisation pairs, regularity
//!   verification;
//! * [`classify`] — sampling-based scheme classification with reproducible
//!   witnesses;
//! * [`corpus`] — the built-in example graphs used by tests and the CLI.

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod graph;
pub mod hopf;
pub mod renorm;

pub use algebra::{LaurentSeries, Model, MomentumPolynomial, SubtractionScheme, TargetElement};
pub use classify::{classify_scheme, IdentityStatus, SchemeClassification, Witness};
pub use graph::{DegreeFunction, FeynmanGraph, PowerCounting, Spinney, TheoryConfig, Wood};
pub use hopf::{Forest, GenId, LinearForm, Session};
pub use renorm::{BwhPair, Method, RenormResult};
