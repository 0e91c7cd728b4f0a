//! Order-by-order factorisation: each step isolates the lowest-grade
//! failure of regularity as an infinitesimal correction `μ`, exponentiates
//! `−μ` into a group-like factor, and convolves that factor into the
//! running character from one fixed side. After `n` steps the running
//! character is clean through grade `n` on one side of the splitting and
//! the accumulated factors form the other side.

use std::collections::BTreeMap;

use crate::algebra::{SubtractionScheme, TargetElement};
use crate::hopf::{FormKind, GenId, HopfError, LinearForm, Session};
use crate::renorm::verify::{lift_projector, regularity_check, RegularityMode, RegularityReport};
use crate::renorm::{Method, Orientation, RenormError};

/// A factorisation of a character into a singular and a regular side.
///
/// For [`Method::Bogoliubov`] and [`Method::ExpLeft`] the defining
/// equation is `φ⁻ ∗ φ = φ⁺`; for [`Method::ExpRight`] it is
/// `φ ∗ φ⁺ = φ⁻`. Both sides are characters valid up to `max_grade`.
#[derive(Clone, Debug)]
pub struct BwhPair {
    /// Which construction produced the pair (fixes the equation shape).
    pub method: Method,
    /// The singular side.
    pub phi_minus: LinearForm,
    /// The regular side.
    pub phi_plus: LinearForm,
    /// Grade through which the factorisation is claimed.
    pub max_grade: u32,
}

impl BwhPair {
    /// The pair rewritten in the counterterm normal form `C ∗ φ = R`,
    /// under which all constructions of the same factorisation can be
    /// compared directly. Left-equation pairs are already in normal form;
    /// right-equation pairs normalise by inverting both sides.
    pub fn normal_pair(
        &self,
        session: &Session,
    ) -> Result<(LinearForm, LinearForm), RenormError> {
        match self.method {
            Method::Bogoliubov | Method::ExpLeft => {
                Ok((self.phi_minus.clone(), self.phi_plus.clone()))
            }
            Method::ExpRight => Ok((
                self.phi_minus.char_inverse(session)?,
                self.phi_plus.char_inverse(session)?,
            )),
        }
    }
}

/// One order of the construction, kept for inspection: the infinitesimal
/// correction, the group-like factor built from it, and the regularity
/// reports taken right after the step was applied.
#[derive(Clone, Debug)]
pub struct ExpStep {
    /// The grade this step cleans.
    pub grade: u32,
    /// Infinitesimal correction `μ` extracted at this grade.
    pub mu: LinearForm,
    /// Group-like factor `exp*(−μ)`.
    pub upsilon: LinearForm,
    /// Whether the factor lies on the expected side of the splitting up to
    /// this grade (regular side under the standard orientation).
    pub upsilon_check: RegularityReport,
    /// Whether the running character lies on the opposite side up to this
    /// grade (singular side under the standard orientation).
    pub phi_minus_check: RegularityReport,
}

/// A complete run of the order-by-order construction.
#[derive(Clone, Debug)]
pub struct ExpRun {
    /// The factorisation the run produced.
    pub pair: BwhPair,
    /// Which half of the splitting supplied the corrections.
    pub orientation: Orientation,
    /// Per-grade records in ascending order.
    pub steps: Vec<ExpStep>,
}

/// Rebuilds a character capped at validity grade `n`, forgetting values on
/// generators above `n`.
fn capped(form: &LinearForm, session: &Session, n: u32) -> Result<LinearForm, HopfError> {
    let mut values = BTreeMap::new();
    for id in session.generators() {
        if session.grade(id) <= n {
            if let Some(v) = form.generator_value(id) {
                values.insert(id, v.clone());
            }
        }
    }
    LinearForm::character(session, form.model(), n, values)
}

/// Negates an infinitesimal character without losing its kind.
fn negated_infinitesimal(
    form: &LinearForm,
    session: &Session,
) -> Result<LinearForm, HopfError> {
    let mut values: BTreeMap<GenId, TargetElement> = BTreeMap::new();
    for id in session.generators() {
        if let Some(v) = form.generator_value(id) {
            values.insert(id, v.neg());
        }
    }
    LinearForm::infinitesimal(session, form.model(), form.grade(), values)
}

/// Finds the first unit or product forest on which a grade component fails
/// to vanish, for error reporting.
fn first_product_violation(
    component: &LinearForm,
    session: &Session,
) -> Result<Option<String>, HopfError> {
    for forest in session.forests_up_to(component.grade())? {
        if (forest.is_unit() || forest.is_product())
            && !component.eval(session, &forest)?.is_zero()
        {
            return Ok(Some(session.forest_key(&forest)));
        }
    }
    Ok(None)
}

fn exponential_core(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
    method: Method,
    orientation: Orientation,
) -> Result<ExpRun, RenormError> {
    if method == Method::Bogoliubov {
        return Err(RenormError::NotExponential);
    }
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
    if n > phi.grade() {
        return Err(HopfError::GradeExceeded {
            requested: n,
            valid: phi.grade(),
        }
        .into());
    }

    let mut running = match method {
        Method::ExpLeft => phi.char_inverse(session)?,
        _ => phi.clone(),
    };
    let (factor_mode, running_mode) = match orientation {
        Orientation::Standard => (RegularityMode::Regular, RegularityMode::Irregular),
        Orientation::Dual => (RegularityMode::Irregular, RegularityMode::Regular),
    };

    let mut factors: Vec<LinearForm> = Vec::new();
    let mut steps: Vec<ExpStep> = Vec::new();
    for grade in 1..=n {
        let (lift_minus, lift_plus) = lift_projector(scheme, &running, session)?;
        let lifted = match orientation {
            Orientation::Standard => lift_plus,
            Orientation::Dual => lift_minus,
        };
        let component = lifted.grade_component(session, grade)?;
        if let Some(forest) = first_product_violation(&component, session)? {
            return Err(RenormError::MuNotInfinitesimal { grade, forest });
        }
        let mu = component.to_infinitesimal(session)?;
        let upsilon = negated_infinitesimal(&mu, session)?.exp_star(session)?;
        running = match method {
            Method::ExpLeft => upsilon.convolve(&running, session)?,
            _ => running.convolve(&upsilon, session)?,
        };
        let upsilon_check = regularity_check(&upsilon, scheme, session, grade, factor_mode)?;
        let phi_minus_check = regularity_check(&running, scheme, session, grade, running_mode)?;
        steps.push(ExpStep {
            grade,
            mu,
            upsilon: upsilon.clone(),
            upsilon_check,
            phi_minus_check,
        });
        factors.push(upsilon);
    }

    let mut composed = LinearForm::unit_character(session, phi.model(), phi.grade())?;
    match method {
        // Factors compose in descending order on the left side.
        Method::ExpLeft => {
            for factor in factors.iter().rev() {
                composed = composed.convolve(factor, session)?;
            }
        }
        // ...and in ascending order on the right side.
        _ => {
            for factor in factors.iter() {
                composed = composed.convolve(factor, session)?;
            }
        }
    }

    let pair = BwhPair {
        method,
        phi_minus: capped(&running, session, n)?,
        phi_plus: capped(&composed, session, n)?,
        max_grade: n,
    };
    Ok(ExpRun {
        pair,
        orientation,
        steps,
    })
}

/// The left-handed construction under the standard orientation: the
/// running character starts at `φ⁻¹`, factors are applied on the left, and
/// the result satisfies `φ⁻ ∗ φ = φ⁺` with `φ⁻` singular and `φ⁺` regular
/// through grade `n`.
pub fn exponential_left(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
) -> Result<ExpRun, RenormError> {
    exponential_core(phi, scheme, session, n, Method::ExpLeft, Orientation::Standard)
}

/// The right-handed construction under the standard orientation: the
/// running character starts at `φ`, factors are applied on the right, and
/// the result satisfies `φ ∗ φ⁺ = φ⁻` with `φ⁻` singular and `φ⁺` regular
/// through grade `n`.
pub fn exponential_right(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
) -> Result<ExpRun, RenormError> {
    exponential_core(phi, scheme, session, n, Method::ExpRight, Orientation::Standard)
}

/// Either exponential construction under either orientation. The dual
/// orientation reads corrections off the singular half instead, swapping
/// which side of the splitting each output lands on; the factorisation
/// equation itself is unchanged.
pub fn exponential_oriented(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
    method: Method,
    orientation: Orientation,
) -> Result<ExpRun, RenormError> {
    exponential_core(phi, scheme, session, n, method, orientation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DegreeFunction;
    use crate::renorm::verify::bwh_verify;
    use crate::renorm::{bogoliubov, random_character_for};

    fn session() -> Session {
        Session::with_corpus(3).expect("corpus closes")
    }

    fn minimal() -> SubtractionScheme {
        SubtractionScheme::Jet(DegreeFunction::Minimal)
    }

    fn val(phi: &LinearForm, id: GenId) -> TargetElement {
        phi.generator_value(id)
            .cloned()
            .unwrap_or_else(|| TargetElement::zero(phi.model()))
    }

    #[test]
    fn first_order_corrections_carry_the_projector_signs() {
        let session = session();
        for scheme in [SubtractionScheme::Pole, minimal()] {
            let phi = random_character_for(&session, &scheme, 3, 51).unwrap();
            let b1 = session.generator_by_name("B1").unwrap();
            let g = session.graph(b1);
            let plus = scheme.p_plus(g, &val(&phi, b1)).unwrap();
            let minus = scheme.p_minus(g, &val(&phi, b1)).unwrap();

            let left = exponential_left(&phi, &scheme, &session, 3).unwrap();
            // μ₁ = −P₊(φ(Γ)) on one-loop generators, from φ⁻₀ = φ⁻¹.
            assert_eq!(val(&left.steps[0].mu, b1), plus.neg());
            // The first factor restores the regular value.
            assert_eq!(val(&left.steps[0].upsilon, b1), plus);
            // The singular side ends at −P₋(φ(Γ)) at grade one.
            assert_eq!(val(&left.pair.phi_minus, b1), minus.neg());

            let right = exponential_right(&phi, &scheme, &session, 3).unwrap();
            // μ₁ = +P₊(φ(Γ)) from φ⁻₀ = φ.
            assert_eq!(val(&right.steps[0].mu, b1), plus);
            assert_eq!(val(&right.steps[0].upsilon, b1), plus.neg());
            // The singular side keeps +P₋(φ(Γ)) at grade one.
            assert_eq!(val(&right.pair.phi_minus, b1), minus);
        }
    }

    #[test]
    fn both_constructions_verify_their_equations() {
        let session = session();
        for scheme in [SubtractionScheme::Pole, minimal()] {
            for seed in [52, 53] {
                let phi = random_character_for(&session, &scheme, 3, seed).unwrap();
                let left = exponential_left(&phi, &scheme, &session, 3).unwrap();
                assert!(bwh_verify(&phi, &left.pair, &scheme, &session, 3).unwrap());
                let right = exponential_right(&phi, &scheme, &session, 3).unwrap();
                assert!(bwh_verify(&phi, &right.pair, &scheme, &session, 3).unwrap());
            }
        }
    }

    #[test]
    fn every_step_lands_on_its_side_of_the_splitting() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 3, 54).unwrap();
        for run in [
            exponential_left(&phi, &scheme, &session, 3).unwrap(),
            exponential_right(&phi, &scheme, &session, 3).unwrap(),
        ] {
            assert_eq!(run.steps.len(), 3);
            for step in &run.steps {
                assert!(step.upsilon_check.holds, "factor at grade {}", step.grade);
                assert!(
                    step.phi_minus_check.holds,
                    "running character at grade {}",
                    step.grade
                );
                // Corrections are genuinely infinitesimal.
                assert!(step.mu.vanishes_on_products(&session).unwrap());
            }
        }
    }

    #[test]
    fn left_construction_reproduces_the_recursive_subtraction() {
        let session = session();
        for scheme in [SubtractionScheme::Pole, minimal()] {
            let phi = random_character_for(&session, &scheme, 3, 55).unwrap();
            let run = exponential_left(&phi, &scheme, &session, 3).unwrap();
            let rec = bogoliubov(&phi, &scheme, &session, 3).unwrap();
            assert!(run
                .pair
                .phi_minus
                .eq_up_to(&rec.c, &session, 3)
                .unwrap());
            assert!(run.pair.phi_plus.eq_up_to(&rec.r, &session, 3).unwrap());
        }
    }

    #[test]
    fn right_construction_is_the_left_one_seen_through_inverses() {
        let session = session();
        let scheme = SubtractionScheme::Pole;
        let phi = random_character_for(&session, &scheme, 3, 56).unwrap();
        let left = exponential_left(&phi, &scheme, &session, 3).unwrap();
        let right = exponential_right(&phi, &scheme, &session, 3).unwrap();
        let (rc, rr) = right.pair.normal_pair(&session).unwrap();
        assert!(left.pair.phi_minus.eq_up_to(&rc, &session, 3).unwrap());
        assert!(left.pair.phi_plus.eq_up_to(&rr, &session, 3).unwrap());
    }

    #[test]
    fn dual_orientation_swaps_the_sides() {
        let session = session();
        let scheme = SubtractionScheme::Jet(DegreeFunction::Critical);
        let phi = random_character_for(&session, &scheme, 3, 57).unwrap();
        let run = exponential_oriented(
            &phi,
            &scheme,
            &session,
            3,
            Method::ExpLeft,
            Orientation::Dual,
        )
        .unwrap();
        for step in &run.steps {
            assert!(step.upsilon_check.holds);
            assert!(step.phi_minus_check.holds);
        }
        // The defining equation holds regardless of orientation…
        let lhs = run.pair.phi_minus.convolve(&phi, &session).unwrap();
        assert!(lhs.eq_up_to(&run.pair.phi_plus, &session, 3).unwrap());
        // …but the sides are exchanged relative to the standard run, so
        // the standard-role verification fails.
        assert!(!bwh_verify(&phi, &run.pair, &scheme, &session, 3).unwrap());

        // At grade one the factor is the singular part itself.
        let b1 = session.generator_by_name("B1").unwrap();
        let g = session.graph(b1);
        let minus = scheme.p_minus(g, &val(&phi, b1)).unwrap();
        let plus = scheme.p_plus(g, &val(&phi, b1)).unwrap();
        assert_eq!(val(&run.steps[0].upsilon, b1), minus);
        assert_eq!(val(&run.pair.phi_minus, b1), plus.neg());
    }

    #[test]
    fn grade_two_corrections_vanish_on_the_bubble_pair() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 3, 58).unwrap();
        let run = exponential_left(&phi, &scheme, &session, 3).unwrap();
        let b1 = session.generator_by_name("B1").unwrap();
        let pair_forest = crate::hopf::Forest::generator(b1)
            .mul(&crate::hopf::Forest::generator(b1));
        let mu2 = &run.steps[1].mu;
        assert!(mu2.eval(&session, &pair_forest).unwrap().is_zero());
    }

    #[test]
    fn misuse_is_rejected() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 2, 59).unwrap();
        assert!(matches!(
            exponential_oriented(
                &phi,
                &scheme,
                &session,
                2,
                Method::Bogoliubov,
                Orientation::Standard
            ),
            Err(RenormError::NotExponential)
        ));
        assert!(matches!(
            exponential_left(&phi, &scheme, &session, 3),
            Err(RenormError::Hopf(HopfError::GradeExceeded { .. }))
        ));
    }
}
