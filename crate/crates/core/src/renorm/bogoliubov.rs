//! The recursive subtraction: prepare each generator with the
//! counterterms of its proper divergent subgraphs, split the prepared
//! value with the scheme projectors, and memoise class by class.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{SubtractionScheme, TargetElement};
use crate::graph::{validate_degree_function, FeynmanGraph};
use crate::hopf::{FormKind, GenId, HopfError, LinearForm, Session};
use crate::renorm::{BwhPair, Method, RenormError};

/// The outcome of the recursive subtraction on every generator up to the
/// requested grade: the counterterm character `C`, the prepared values
/// `R̄`, and the renormalised character `R`, tied to the scheme that
/// produced them.
#[derive(Clone, Debug)]
pub struct RenormResult {
    /// Counterterm character: `C(Γ) = −P₋(R̄(Γ))` on generators.
    pub c: LinearForm,
    /// Prepared value per generator: the amplitude plus one counterterm
    /// product for every spinney of its wood.
    pub rbar: BTreeMap<GenId, TargetElement>,
    /// Renormalised character: `R(Γ) = P₊(R̄(Γ))` on generators.
    pub r: LinearForm,
    /// The scheme the projectors came from.
    pub scheme: SubtractionScheme,
    /// Highest generator grade the recursion covered.
    pub max_grade: u32,
}

/// One row of a serialised subtraction report.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    /// Class name inside the session.
    pub name: String,
    /// Canonical isomorphism key of the class graph.
    pub graph: String,
    /// Counterterm value.
    #[serde(rename = "C")]
    pub c: TargetElement,
    /// Prepared value.
    #[serde(rename = "Rbar")]
    pub rbar: TargetElement,
    /// Renormalised value.
    #[serde(rename = "R")]
    pub r: TargetElement,
}

impl RenormResult {
    /// The factorisation this result represents, in the counterterm
    /// normal form `C ∗ φ = R`.
    pub fn as_bwh_pair(&self) -> BwhPair {
        BwhPair {
            method: Method::Bogoliubov,
            phi_minus: self.c.clone(),
            phi_plus: self.r.clone(),
            max_grade: self.max_grade,
        }
    }

    /// Per-generator rows in ascending (grade, name) order.
    pub fn generator_records(&self, session: &Session) -> Vec<GeneratorRecord> {
        let model = self.c.model();
        let mut ids: Vec<GenId> = session
            .generators()
            .filter(|&id| session.grade(id) <= self.max_grade)
            .collect();
        ids.sort_by_key(|&id| (session.grade(id), session.name(id).to_string()));
        ids.iter()
            .map(|&id| GeneratorRecord {
                name: session.name(id).to_string(),
                graph: session.key(id).to_string(),
                c: self
                    .c
                    .generator_value(id)
                    .cloned()
                    .unwrap_or_else(|| TargetElement::zero(model)),
                rbar: self
                    .rbar
                    .get(&id)
                    .cloned()
                    .unwrap_or_else(|| TargetElement::zero(model)),
                r: self
                    .r
                    .generator_value(id)
                    .cloned()
                    .unwrap_or_else(|| TargetElement::zero(model)),
            })
            .collect()
    }

    /// Full report as a JSON value.
    pub fn to_json(&self, session: &Session) -> serde_json::Value {
        serde_json::json!({
            "scheme": self.scheme.name(),
            "model": self.c.model().to_string(),
            "maxGrade": self.max_grade,
            "results": self.generator_records(session),
        })
    }
}

/// Looks up the class of `graph` in the session, which must have been
/// closed over every class reachable from its generators.
fn class_of(session: &Session, graph: &FeynmanGraph) -> Result<GenId, RenormError> {
    session
        .lookup(graph)
        .ok_or_else(|| RenormError::UnregisteredClass {
            key: graph.canonical_key(),
        })
}

/// Runs the recursive subtraction for `phi` under `scheme` on every
/// generator of grade at most `n`.
///
/// For a jet scheme the degree function is first validated on every
/// generator in range; a violation rejects the scheme rather than running
/// a recursion whose subtractions would not be guaranteed to close.
/// Generators are processed in ascending grade so every detached class and
/// every contraction a wood mentions is already finished when it is
/// needed.
pub fn bogoliubov(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    n: u32,
) -> Result<RenormResult, RenormError> {
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

    let mut order: Vec<GenId> = session
        .generators()
        .filter(|&id| session.grade(id) <= n)
        .collect();
    order.sort_by_key(|&id| (session.grade(id), id));

    if let SubtractionScheme::Jet(df) = scheme {
        for &id in &order {
            let report = validate_degree_function(df, session.graph(id))?;
            if !report.valid {
                let detail = match report.violation {
                    Some(v) => format!("{v:?}"),
                    None => "degree undefined on a divergent subgraph".to_string(),
                };
                return Err(RenormError::SchemeRejected {
                    graph: session.name(id).to_string(),
                    detail,
                });
            }
        }
    }

    let model = phi.model();
    let zero = TargetElement::zero(model);
    let mut c_vals: BTreeMap<GenId, TargetElement> = BTreeMap::new();
    let mut rbar: BTreeMap<GenId, TargetElement> = BTreeMap::new();
    let mut r_vals: BTreeMap<GenId, TargetElement> = BTreeMap::new();

    for &id in &order {
        let graph = session.graph(id).clone();
        let mut prepared = phi.generator_value(id).cloned().unwrap_or_else(|| zero.clone());
        for spinney in graph.wood()?.iter() {
            let mut term = TargetElement::one(model);
            for &member in spinney.members() {
                let detached = graph.detach(member)?;
                let member_id = class_of(session, &detached)?;
                match c_vals.get(&member_id) {
                    Some(c) => term = term.try_mul(c)?,
                    // A vanishing counterterm kills the whole product.
                    None => {
                        term = zero.clone();
                        break;
                    }
                }
            }
            if term.is_zero() {
                continue;
            }
            let cograph = graph.contract(spinney)?;
            let cograph_id = class_of(session, &cograph)?;
            let cograph_value = phi
                .generator_value(cograph_id)
                .cloned()
                .unwrap_or_else(|| zero.clone());
            prepared = prepared.try_add(&term.try_mul(&cograph_value)?)?;
        }
        let counterterm = scheme.p_minus(&graph, &prepared)?.neg();
        let renormalised = scheme.p_plus(&graph, &prepared)?;
        if !counterterm.is_zero() {
            c_vals.insert(id, counterterm);
        }
        if !renormalised.is_zero() {
            r_vals.insert(id, renormalised);
        }
        rbar.insert(id, prepared);
    }

    let c = LinearForm::character(session, model, n, c_vals)?;
    let r = LinearForm::character(session, model, n, r_vals)?;
    Ok(RenormResult {
        c,
        rbar,
        r,
        scheme: scheme.clone(),
        max_grade: n,
    })
}

/// Re-derives the counterterm value of one class by direct recursion over
/// the wood, with no memoisation and no shared state. Exponentially slower
/// than [`bogoliubov`] and kept deliberately independent of it as a
/// cross-check.
pub fn forest_expansion_oracle(
    phi: &LinearForm,
    scheme: &SubtractionScheme,
    session: &Session,
    id: GenId,
) -> Result<TargetElement, RenormError> {
    fn counterterm_of(
        phi: &LinearForm,
        scheme: &SubtractionScheme,
        session: &Session,
        graph: &FeynmanGraph,
    ) -> Result<TargetElement, RenormError> {
        let model = phi.model();
        let own_id = class_of(session, graph)?;
        let mut prepared = phi
            .generator_value(own_id)
            .cloned()
            .unwrap_or_else(|| TargetElement::zero(model));
        for spinney in graph.wood()?.iter() {
            let mut term = TargetElement::one(model);
            for &member in spinney.members() {
                let detached = graph.detach(member)?;
                term = term.try_mul(&counterterm_of(phi, scheme, session, &detached)?)?;
            }
            let cograph = graph.contract(spinney)?;
            let cograph_value = phi
                .generator_value(class_of(session, &cograph)?)
                .cloned()
                .unwrap_or_else(|| TargetElement::zero(model));
            prepared = prepared.try_add(&term.try_mul(&cograph_value)?)?;
        }
        Ok(scheme.p_minus(graph, &prepared)?.neg())
    }
    counterterm_of(phi, scheme, session, session.graph(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DegreeFunction;
    use crate::renorm::random_character_for;
    use crate::renorm::verify::{bwh_verify, regularity_check, RegularityMode};

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
    fn one_loop_subtraction_splits_the_amplitude() {
        let session = session();
        for scheme in [SubtractionScheme::Pole, minimal()] {
            let phi = random_character_for(&session, &scheme, 3, 41).unwrap();
            let out = bogoliubov(&phi, &scheme, &session, 3).unwrap();
            let b1 = session.generator_by_name("B1").unwrap();
            let g = session.graph(b1);
            let value = val(&phi, b1);
            // A primitive generator is its own preparation.
            assert_eq!(out.rbar[&b1], value);
            assert_eq!(val(&out.c, b1), scheme.p_minus(g, &value).unwrap().neg());
            assert_eq!(val(&out.r, b1), scheme.p_plus(g, &value).unwrap());
            // C + R reassemble the prepared value exactly.
            let back = out.rbar[&b1]
                .try_sub(&val(&out.r, b1))
                .unwrap()
                .try_add(&val(&out.c, b1))
                .unwrap();
            assert!(back.is_zero());
        }
    }

    #[test]
    fn three_loop_ladder_preparation_expands_over_its_wood() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 3, 42).unwrap();
        let out = bogoliubov(&phi, &scheme, &session, 3).unwrap();

        let b1 = session.generator_by_name("B1").unwrap();
        let n2 = session.generator_by_name("N2").unwrap();
        let o3 = session.generator_by_name("O3").unwrap();
        let c_b1 = val(&out.c, b1);

        // Two one-bubble spinneys contract to the two-loop chain, and the
        // disjoint pair contracts to the one-loop bubble.
        let expected = val(&phi, o3)
            .try_add(
                &c_b1
                    .try_mul(&val(&phi, n2))
                    .unwrap()
                    .scale(&num::BigRational::from_integer(2.into())),
            )
            .unwrap()
            .try_add(
                &c_b1
                    .try_mul(&c_b1)
                    .unwrap()
                    .try_mul(&val(&phi, b1))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(out.rbar[&o3], expected);
    }

    #[test]
    fn nested_chain_preparation_uses_the_inner_counterterm() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 3, 43).unwrap();
        let out = bogoliubov(&phi, &scheme, &session, 3).unwrap();

        let b1 = session.generator_by_name("B1").unwrap();
        let n2 = session.generator_by_name("N2").unwrap();
        let expected = val(&phi, n2)
            .try_add(&val(&out.c, b1).try_mul(&val(&phi, b1)).unwrap())
            .unwrap();
        assert_eq!(out.rbar[&n2], expected);
    }

    #[test]
    fn counterterms_match_the_unmemoised_expansion() {
        let session = session();
        for scheme in [SubtractionScheme::Pole, minimal()] {
            let phi = random_character_for(&session, &scheme, 3, 44).unwrap();
            let out = bogoliubov(&phi, &scheme, &session, 3).unwrap();
            for id in session.generators() {
                if session.grade(id) > 3 {
                    continue;
                }
                let direct = forest_expansion_oracle(&phi, &scheme, &session, id).unwrap();
                let memoised = out
                    .c
                    .generator_value(id)
                    .cloned()
                    .unwrap_or_else(|| TargetElement::zero(phi.model()));
                assert_eq!(direct, memoised, "class {}", session.name(id));
            }
        }
    }

    #[test]
    fn jet_subtraction_annihilates_low_orders() {
        let session = session();
        for df in [DegreeFunction::Minimal, DegreeFunction::Critical] {
            let scheme = SubtractionScheme::Jet(df);
            let phi = random_character_for(&session, &scheme, 3, 45).unwrap();
            let out = bogoliubov(&phi, &scheme, &session, 3).unwrap();
            for id in session.generators() {
                if session.grade(id) > 3 {
                    continue;
                }
                let order = scheme
                    .subtraction_order(session.graph(id))
                    .unwrap()
                    .unwrap();
                let r = out
                    .r
                    .generator_value(id)
                    .cloned()
                    .unwrap_or_else(|| TargetElement::zero(phi.model()));
                assert!(
                    r.as_poly().unwrap().taylor_jet(order).is_zero(),
                    "low orders survive on {}",
                    session.name(id)
                );
            }
        }
    }

    #[test]
    fn factorisation_verifies_and_corruption_is_caught() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 3, 46).unwrap();
        let out = bogoliubov(&phi, &scheme, &session, 3).unwrap();
        let pair = out.as_bwh_pair();
        assert!(bwh_verify(&phi, &pair, &scheme, &session, 3).unwrap());

        // The counterterm side projects onto the singular half, the
        // renormalised side onto the regular half.
        assert!(
            regularity_check(&out.c, &scheme, &session, 3, RegularityMode::Irregular)
                .unwrap()
                .holds
        );
        assert!(
            regularity_check(&out.r, &scheme, &session, 3, RegularityMode::Regular)
                .unwrap()
                .holds
        );

        // Corrupt one renormalised value and the equation fails.
        let mut broken = pair.clone();
        let b1 = session.generator_by_name("B1").unwrap();
        broken.phi_plus = broken
            .phi_plus
            .map_values(&session, |forest, v| {
                if session.forest_key(forest) == "B1" {
                    Ok(v.try_add(&TargetElement::one(v.model()))?)
                } else {
                    Ok(v)
                }
            })
            .unwrap();
        assert!(!bwh_verify(&phi, &broken, &scheme, &session, 3).unwrap());
    }

    #[test]
    fn invalid_degree_functions_are_rejected() {
        let session = session();
        // A custom degree that undervalues the two-loop chain violates the
        // baseline inequality the recursion relies on.
        let mut orders = BTreeMap::new();
        for id in session.generators() {
            orders.insert(session.key(id).to_string(), session.omega(id));
        }
        let n2 = session.generator_by_name("N2").unwrap();
        orders.insert(session.key(n2).to_string(), -1);
        let scheme = SubtractionScheme::Jet(DegreeFunction::Custom(orders));
        let phi = random_character_for(&session, &minimal(), 3, 47).unwrap();
        let err = bogoliubov(&phi, &scheme, &session, 3).unwrap_err();
        match err {
            RenormError::SchemeRejected { .. } => {}
            other => panic!("expected a scheme rejection, got {other:?}"),
        }
    }

    #[test]
    fn inputs_are_validated() {
        let session = session();
        let scheme = minimal();
        let phi = random_character_for(&session, &scheme, 2, 48).unwrap();
        // Asking beyond the character's validity is an error.
        assert!(matches!(
            bogoliubov(&phi, &scheme, &session, 3),
            Err(RenormError::Hopf(HopfError::GradeExceeded { .. }))
        ));
        // Model mismatch between character and scheme is an error.
        assert!(matches!(
            bogoliubov(&phi, &SubtractionScheme::Pole, &session, 2),
            Err(RenormError::Hopf(HopfError::ModelMismatch { .. }))
        ));
    }
}
