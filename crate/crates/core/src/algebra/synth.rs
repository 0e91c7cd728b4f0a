//! Deterministic synthesis of random algebra elements for property tests
//! and the scheme classifier.
//!
//! All randomness flows from explicit 64-bit seeds through [`subseed`], so
//! every sampled value is reproducible from `(seed, index path)` alone.

use num::{BigInt, BigRational};
use rand::Rng;

use super::laurent::{LaurentSeries, DEFAULT_TRUNC};
use super::poly::{Monomial, MomentumPolynomial};

/// Derives an independent child seed from a base seed and an index path.
///
/// The derivation is a keyed avalanche mix, so nearby paths give unrelated
/// seeds; it is stable across platforms and releases.
pub fn subseed(base: u64, path: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let mut acc = mix(base ^ 0x9E37_79B9_7F4A_7C15);
    for &part in path {
        acc = mix(acc.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(part));
    }
    acc
}

/// A small nonzero exact rational: numerator in ±1..=9, denominator in
/// 1..=4.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let numer = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let denom = rng.gen_range(1..=4i64);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A random Laurent series supported on exponents `-pole_cap ..= 1`, never
/// identically zero, carrying the default truncation order.
///
/// Keeping the support bounded below by `-pole_cap` (callers pass the loop
/// number) and above by 1 ensures that products of up to `DEFAULT_TRUNC`
/// such series stay inside their trusted range, so equality checks on them
/// are effectively exact.
pub fn random_laurent<R: Rng + ?Sized>(rng: &mut R, pole_cap: i64) -> LaurentSeries {
    let mut terms = Vec::new();
    for exp in -pole_cap.max(0)..=1 {
        if rng.gen_bool(0.7) {
            terms.push((exp, random_rational(rng)));
        }
    }
    if terms.is_empty() {
        terms.push((0, random_rational(rng)));
    }
    LaurentSeries::from_terms(terms, DEFAULT_TRUNC)
}

/// A random polynomial over the given variables with one or two monomials
/// in every total degree `0..=max_degree`, each with a
/// [`random_laurent`] coefficient.  With no variables the result is a
/// random constant.
pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    vars: &[String],
    max_degree: u32,
    pole_cap: i64,
) -> MomentumPolynomial {
    if vars.is_empty() {
        return MomentumPolynomial::constant(random_laurent(rng, pole_cap));
    }
    let mut out = MomentumPolynomial::zero();
    for degree in 0..=max_degree {
        let terms = if degree == 0 { 1 } else { rng.gen_range(1..=2) };
        for _ in 0..terms {
            let mut mono = Monomial::unit();
            for _ in 0..degree {
                let v = &vars[rng.gen_range(0..vars.len())];
                mono = mono.mul(&Monomial::var(v, 1));
            }
            out = out.add(&MomentumPolynomial::term(mono, random_laurent(rng, pole_cap)));
        }
    }
    out
}
