//! Exact target algebras and subtraction schemes.
//!
//! Two concrete algebras are provided.  Model A is the algebra of Laurent
//! series in a single regulator `eps` with exact rational coefficients; its
//! subtraction projector keeps the strictly negative powers and is the same
//! map for every graph.  Model B is a polynomial algebra in formal external
//! momenta whose coefficients are Model-A series; its subtraction projector
//! is a Taylor jet whose order is supplied by a per-graph degree function,
//! so different graphs are subtracted differently.

mod laurent;
mod poly;
mod scheme;
mod synth;
mod target;

pub use laurent::{LaurentSeries, DEFAULT_TRUNC, EXACT};
pub use poly::{Monomial, MomentumPolynomial};
pub use scheme::{
    jets_fix_product, jets_kill_remainders, rb_family_check, rota_baxter_pole_check,
    SubtractionScheme,
};
pub use synth::{random_laurent, random_poly, random_rational, subseed};
pub use target::{Model, TargetElement};

use num::BigRational;
use thiserror::Error;

/// Errors raised by algebra operations.
#[derive(Debug, Error)]
pub enum AlgebraError {
    /// Arithmetic combined a Model-A element with a Model-B element.
    #[error("mismatched target algebras: {0} vs {1}")]
    MixedModels(Model, Model),
    /// A jet order outside the range an identity is stated for.
    #[error("jet order {0} is outside the admissible range for this identity")]
    JetOrderOutOfRange(i64),
    /// Two variable sets that must be disjoint share a variable.
    #[error("variable sets are not disjoint: both contain `{0}`")]
    SharedVariable(String),
    /// A polynomial uses a variable missing from the declared variable sets.
    #[error("variable `{0}` is not covered by the declared variable sets")]
    UncoveredVariable(String),
    /// A projector for one model was applied to an element of the other.
    #[error("scheme expects a {expected} element, got a {got} element")]
    WrongModel { expected: Model, got: Model },
    /// A per-graph subtraction degree was required but unavailable.
    #[error("subtraction degree unavailable: {0}")]
    MissingDegree(String),
}

/// Formats a rational as `numerator/denominator`, always including the
/// denominator (`3` prints as `3/1`).
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses the `numerator/denominator` form produced by
/// [`rational_to_string`]; a bare integer is accepted too.
pub fn rational_from_string(s: &str) -> Option<BigRational> {
    s.parse().ok()
}
