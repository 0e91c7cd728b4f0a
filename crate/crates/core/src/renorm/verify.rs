//! Lifting the scheme splitting to characters, and the checks built on
//! that lift: side membership (regularity) and full factorisation
//! verification.

use std::collections::BTreeMap;

use crate::algebra::SubtractionScheme;
use crate::hopf::{Forest, FormKind, HopfError, LinearForm, Session};
use crate::renorm::{BwhPair, Method, RenormError};

/// Applies the scheme projectors to every generator value of a character
/// and extends multiplicatively, producing the pair `(𝒫₋φ, 𝒫₊φ)` of
/// characters. Both send the empty forest to one; a generator value is
/// split with the projector of that generator's own graph.
pub fn lift_projector(
    scheme: &SubtractionScheme,
    phi: &LinearForm,
    session: &Session,
) -> Result<(LinearForm, LinearForm), RenormError> {
    if phi.kind() != FormKind::Character {
        return Err(HopfError::NotACharacter.into());
    }
    if phi.model() != scheme.model() {
        return Err(HopfError::ModelMismatch {
            expected: scheme.model(),
            got: phi.model(),
        }
        .into());
    }
    let mut minus = BTreeMap::new();
    let mut plus = BTreeMap::new();
    for id in session.generators() {
        if session.grade(id) > phi.grade() {
            continue;
        }
        if let Some(value) = phi.generator_value(id) {
            let graph = session.graph(id);
            let m = scheme.p_minus(graph, value)?;
            let p = scheme.p_plus(graph, value)?;
            if !m.is_zero() {
                minus.insert(id, m);
            }
            if !p.is_zero() {
                plus.insert(id, p);
            }
        }
    }
    let lifted_minus = LinearForm::character(session, phi.model(), phi.grade(), minus)?;
    let lifted_plus = LinearForm::character(session, phi.model(), phi.grade(), plus)?;
    Ok((lifted_minus, lifted_plus))
}

/// Which side of the splitting a form is asked to live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityMode {
    /// Agreement with the lifted regular projection `𝒫₊φ`.
    Regular,
    /// Agreement with the lifted singular projection `𝒫₋φ`.
    Irregular,
}

/// Outcome of a side-membership check.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    /// True when the form agrees with its own lifted projection on every
    /// forest up to the requested grade.
    pub holds: bool,
    /// The first forest that disagrees, when one exists.
    pub witness: Option<Forest>,
}

/// Checks that `phi` agrees with its own lifted projection — `𝒫₊φ` for
/// [`RegularityMode::Regular`], `𝒫₋φ` for [`RegularityMode::Irregular`] —
/// on every forest of grade at most `n`.
pub fn regularity_check(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
    mode: RegularityMode,
) -> Result<RegularityReport, RenormError> {
    let (lifted_minus, lifted_plus) = lift_projector(scheme, phi, session)?;
    let projection = match mode {
        RegularityMode::Regular => lifted_plus,
        RegularityMode::Irregular => lifted_minus,
    };
    for forest in session.forests_up_to(n)? {
        let own = phi.eval(session, &forest)?;
        let projected = projection.eval(session, &forest)?;
        if own != projected {
            return Ok(RegularityReport {
                holds: false,
                witness: Some(forest),
            });
        }
    }
    Ok(RegularityReport {
        holds: true,
        witness: None,
    })
}

/// Verifies a factorisation of `phi` through grade `n`: the defining
/// equation of the pair's method, plus side membership of both halves —
/// the regular side must pass the [`RegularityMode::Regular`] check and
/// the singular side the [`RegularityMode::Irregular`] one.
pub fn bwh_verify(
    phi: &LinearForm,
    pair: &BwhPair,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
) -> Result<bool, RenormError> {
    let equation_holds = match pair.method {
        Method::Bogoliubov | Method::ExpLeft => pair
            .phi_minus
            .convolve(phi, session)?
            .eq_up_to(&pair.phi_plus, session, n)?,
        Method::ExpRight => phi
            .convolve(&pair.phi_plus, session)?
            .eq_up_to(&pair.phi_minus, session, n)?,
    };
    if !equation_holds {
        return Ok(false);
    }
    let regular = regularity_check(&pair.phi_plus, scheme, session, n, RegularityMode::Regular)?;
    let singular =
        regularity_check(&pair.phi_minus, scheme, session, n, RegularityMode::Irregular)?;
    Ok(regular.holds && singular.holds)
}
