//! Coalgebra and convolution laws checked across the whole built-in
//! corpus: coassociativity, the counit laws, multiplicativity of the
//! coproduct, and associativity of convolution on random characters.

use std::collections::BTreeMap;

use renorm_core::algebra::{Model, SubtractionScheme};
use renorm_core::graph::DegreeFunction;
use renorm_core::hopf::{Forest, Session};
use renorm_core::renorm::random_character_for;

type Triple = BTreeMap<(Forest, Forest, Forest), u64>;

fn expand_left(session: &Session, forest: &Forest) -> Triple {
    let mut out: Triple = BTreeMap::new();
    for (a, b, m) in session.coproduct(forest).unwrap().terms() {
        for (a1, a2, m2) in session.coproduct(a).unwrap().terms() {
            *out.entry((a1.clone(), a2.clone(), b.clone())).or_insert(0) += m * m2;
        }
    }
    out
}

fn expand_right(session: &Session, forest: &Forest) -> Triple {
    let mut out: Triple = BTreeMap::new();
    for (a, b, m) in session.coproduct(forest).unwrap().terms() {
        for (b1, b2, m2) in session.coproduct(b).unwrap().terms() {
            *out.entry((a.clone(), b1.clone(), b2.clone())).or_insert(0) += m * m2;
        }
    }
    out
}

#[test]
fn the_coproduct_is_coassociative_on_every_forest() {
    let session = Session::with_corpus(4).unwrap();
    for forest in session.forests_up_to(4).unwrap() {
        assert_eq!(
            expand_left(&session, &forest),
            expand_right(&session, &forest),
            "forest {}",
            session.forest_key(&forest)
        );
    }
}

#[test]
fn the_empty_forest_is_a_two_sided_counit() {
    let session = Session::with_corpus(4).unwrap();
    for forest in session.forests_up_to(4).unwrap() {
        let mut from_left: BTreeMap<Forest, u64> = BTreeMap::new();
        let mut from_right: BTreeMap<Forest, u64> = BTreeMap::new();
        for (a, b, m) in session.coproduct(&forest).unwrap().terms() {
            if a.is_unit() {
                *from_left.entry(b.clone()).or_insert(0) += m;
            }
            if b.is_unit() {
                *from_right.entry(a.clone()).or_insert(0) += m;
            }
        }
        let expected = BTreeMap::from([(forest.clone(), 1u64)]);
        assert_eq!(from_left, expected, "{}", session.forest_key(&forest));
        assert_eq!(from_right, expected, "{}", session.forest_key(&forest));
    }
}

#[test]
fn the_coproduct_is_multiplicative_on_forest_products() {
    let session = Session::with_corpus(4).unwrap();
    let small = session.forests_up_to(2).unwrap();
    for f in &small {
        for g in &small {
            let product = f.mul(g);
            if session.forest_grade(&product) > session.max_grade() {
                continue;
            }
            let direct = session.coproduct(&product).unwrap();
            let componentwise = session
                .coproduct(f)
                .unwrap()
                .product(&session.coproduct(g).unwrap());
            assert_eq!(
                direct.terms().collect::<Vec<_>>(),
                componentwise.terms().collect::<Vec<_>>(),
                "{} * {}",
                session.forest_key(f),
                session.forest_key(g)
            );
        }
    }
}

#[test]
fn convolution_is_associative_and_unital_on_random_characters() {
    let session = Session::with_corpus(3).unwrap();
    let schemes = [
        (SubtractionScheme::Pole, Model::A),
        (
            SubtractionScheme::Jet(DegreeFunction::Minimal),
            Model::B,
        ),
    ];
    for (scheme, model) in &schemes {
        for seed in [101, 102, 103] {
            let phi = random_character_for(&session, scheme, 3, seed).unwrap();
            let psi = random_character_for(&session, scheme, 3, seed + 1000).unwrap();
            let chi = random_character_for(&session, scheme, 3, seed + 2000).unwrap();

            let left = phi
                .convolve(&psi, &session)
                .unwrap()
                .convolve(&chi, &session)
                .unwrap();
            let right = phi
                .convolve(&psi.convolve(&chi, &session).unwrap(), &session)
                .unwrap();
            assert!(left.eq_up_to(&right, &session, 3).unwrap());

            let e = renorm_core::hopf::LinearForm::unit_character(&session, *model, 3).unwrap();
            assert!(e
                .convolve(&phi, &session)
                .unwrap()
                .eq_up_to(&phi, &session, 3)
                .unwrap());
            assert!(phi
                .convolve(&e, &session)
                .unwrap()
                .eq_up_to(&phi, &session, 3)
                .unwrap());
        }
    }
}

#[test]
fn inverse_exponential_and_logarithm_commute_with_the_grading() {
    let session = Session::with_corpus(3).unwrap();
    let scheme = SubtractionScheme::Jet(DegreeFunction::Minimal);
    for seed in [104, 105] {
        let phi = random_character_for(&session, &scheme, 3, seed).unwrap();
        // φ ∗ φ⁻¹ = e = φ⁻¹ ∗ φ.
        let inv = phi.char_inverse(&session).unwrap();
        let e = renorm_core::hopf::LinearForm::unit_character(&session, Model::B, 3).unwrap();
        assert!(phi
            .convolve(&inv, &session)
            .unwrap()
            .eq_up_to(&e, &session, 3)
            .unwrap());
        assert!(inv
            .convolve(&phi, &session)
            .unwrap()
            .eq_up_to(&e, &session, 3)
            .unwrap());
        // exp* and log* are mutually inverse on this character.
        let log = phi.log_star(&session).unwrap();
        let back = log.exp_star(&session).unwrap();
        assert!(back.eq_up_to(&phi, &session, 3).unwrap());
    }
}
