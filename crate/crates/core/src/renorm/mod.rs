//! Renormalisation engines over a closed generator session.
//!
//! Two independent constructions of the same counterterm/renormalised
//! factorisation live here:
//!
//! * [`bogoliubov`] — the classical recursion over the wood: prepare each
//!   generator with the counterterms of its proper divergent subgraphs,
//!   then split the prepared value with the scheme projectors.
//! * [`exponential_left`] / [`exponential_right`] — an order-by-order
//!   construction that removes one grade of divergence per step with a
//!   group-like factor `exp*(−μ)` of an infinitesimal correction.
//!
//! Both produce a [`BwhPair`], a factorisation of the input character into
//! an irregular (counterterm) side and a regular (renormalised) side;
//! [`bwh_verify`] checks the defining equation and both regularity claims.
//! [`forest_expansion_oracle`] re-derives counterterm values by direct,
//! unmemoised recursion and exists purely as a cross-check.

mod bogoliubov;
mod exponential;
mod verify;

pub use bogoliubov::{bogoliubov, forest_expansion_oracle, GeneratorRecord, RenormResult};
pub use exponential::{
    exponential_left, exponential_oriented, exponential_right, BwhPair, ExpRun, ExpStep,
};
pub use verify::{bwh_verify, lift_projector, regularity_check, RegularityMode, RegularityReport};

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    random_laurent, random_poly, subseed, AlgebraError, Model, SubtractionScheme, TargetElement,
};
use crate::graph::GraphError;
use crate::hopf::{GenId, HopfError, LinearForm, Session};

/// Which construction produced a factorisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Method {
    /// Recursive preparation over the wood.
    Bogoliubov,
    /// Order-by-order removal with group-like factors composed on the left.
    ExpLeft,
    /// Order-by-order removal with group-like factors composed on the right.
    ExpRight,
}

impl Method {
    /// Stable command-line / report spelling.
    pub fn name(self) -> &'static str {
        match self {
            Method::Bogoliubov => "bogoliubov",
            Method::ExpLeft => "exp-left",
            Method::ExpRight => "exp-right",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which half of the target-algebra splitting drives the order-by-order
/// corrections. The standard orientation projects each step with the
/// regular half and drives the running character towards the irregular
/// side; the dual orientation swaps the two halves, producing the mirrored
/// factorisation with the roles of the sides exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// Corrections are read off with the regular projector.
    Standard,
    /// Corrections are read off with the singular projector.
    Dual,
}

impl Orientation {
    /// Stable report spelling.
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Standard => "standard",
            Orientation::Dual => "dual",
        }
    }
}

/// Errors raised by the renormalisation engines.
#[derive(Debug, Error)]
pub enum RenormError {
    /// The scheme's degree function fails its validity inequality on a
    /// generator, so the recursion's guarantees do not apply.
    #[error("scheme rejected on {graph}: {detail}")]
    SchemeRejected { graph: String, detail: String },
    /// An order-`grade` correction failed to vanish on the unit or on a
    /// product forest, so it is not an infinitesimal character and cannot
    /// be exponentiated.
    #[error("order-{grade} correction does not vanish on the forest {forest}")]
    MuNotInfinitesimal { grade: u32, forest: String },
    /// A detachment or contraction produced a class the session does not
    /// know; the session was not closed over this generator set.
    #[error("class {key} is not registered in the session")]
    UnregisteredClass { key: String },
    /// The requested construction only makes sense for the two exponential
    /// methods.
    #[error("the orientation-aware construction only runs exp-left or exp-right")]
    NotExponential,
    /// The session has no generators at all.
    #[error("the session has no generators")]
    EmptyCorpus,
    /// Structural error from the Hopf layer.
    #[error(transparent)]
    Hopf(#[from] HopfError),
    /// Structural error from the target algebra.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// Structural error from the graph layer.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Draws one synthetic amplitude for the class `id`, shaped like the
/// session's conventions for that class: a Laurent series with pole order
/// at most the class grade in the series model, or a polynomial in the
/// class's own momentum variables with total degree at most two above the
/// scheme's subtraction order in the momentum model.
pub fn synthetic_element(
    session: &Session,
    scheme: &SubtractionScheme,
    id: GenId,
    rng: &mut impl Rng,
) -> Result<TargetElement, RenormError> {
    Ok(match scheme.model() {
        Model::A => TargetElement::Laurent(random_laurent(rng, i64::from(session.grade(id)))),
        Model::B => {
            let order = scheme
                .subtraction_order(session.graph(id))?
                .expect("momentum-model schemes always carry an order");
            TargetElement::Poly(random_poly(
                rng,
                session.variables(id),
                (order + 2).max(0) as u32,
                i64::from(session.grade(id)),
            ))
        }
    })
}

/// A reproducible random character whose generator values are shaped for
/// the given scheme (see [`synthetic_element`]). Generators above `grade`
/// are left at zero; the result is valid up to `grade`.
pub fn random_character_for(
    session: &Session,
    scheme: &SubtractionScheme,
    grade: u32,
    seed: u64,
) -> Result<LinearForm, RenormError> {
    let mut gen_values = BTreeMap::new();
    for id in session.generators() {
        if session.grade(id) > grade {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(subseed(
            seed,
            &[crate::graph::fnv1a(session.name(id).as_bytes()), 3],
        ));
        let value = synthetic_element(session, scheme, id, &mut rng)?;
        if !value.is_zero() {
            gen_values.insert(id, value);
        }
    }
    Ok(LinearForm::character(
        session,
        scheme.model(),
        grade,
        gen_values,
    )?)
}
