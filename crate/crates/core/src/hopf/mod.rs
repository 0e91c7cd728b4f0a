//! The graded connected commutative algebra of divergent
//! one-particle-irreducible graphs, with the spinney coproduct,
//! convolution of grade-truncated linear forms, character-group
//! operations, and the convolution exponential/logarithm.
//!
//! The entry point is [`Session`]: register graph classes, close the
//! session (which interns everything reachable by detachment and
//! contraction and caches all coproducts), then build and combine
//! [`LinearForm`]s over it.

mod forest;
mod form;
mod session;

pub use forest::{Forest, GenId, TensorSum};
pub use form::{FormKind, LinearForm};
pub use session::{Session, DEFAULT_MAX_GRADE};

use thiserror::Error;

use crate::algebra::{AlgebraError, Model};
use crate::graph::GraphError;

/// Errors from session management and linear-form operations.
#[derive(Error, Debug)]
pub enum HopfError {
    /// Registration attempted after the session was closed.
    #[error("the session is closed; no further classes can be registered")]
    AlreadyClosed,
    /// A coproduct or forest query on a session that is still open.
    #[error("the session is not closed yet; call close() first")]
    NotClosed,
    /// The graph cannot generate the algebra.
    #[error("`{name}` is not a generator: {reason}")]
    NotAGenerator { name: String, reason: String },
    /// Registered name and class do not pair up consistently.
    #[error("name `{name}` clashes with the registered class `{existing}`")]
    NameClash { name: String, existing: String },
    /// A form or forest was consumed beyond its validity grade.
    #[error("grade {requested} exceeds the valid grade {valid}")]
    GradeExceeded { requested: u32, valid: u32 },
    /// Character-only operation applied to a non-character.
    #[error("the operation requires a character")]
    NotACharacter,
    /// Infinitesimal-only operation applied to a form that is not an
    /// infinitesimal character.
    #[error("the operation requires an infinitesimal character")]
    NotInfinitesimal,
    /// Two forms over different target algebras were combined.
    #[error("mismatched target algebras: expected {expected}, got {got}")]
    ModelMismatch { expected: Model, got: Model },
    /// Underlying target-algebra failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// Underlying graph failure.
    #[error(transparent)]
    Graph(#[from] GraphError),
}
