//! Laurent series in the regulator `eps` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rational_from_string, rational_to_string};

/// Truncation order meaning "every coefficient is exact".
pub const EXACT: i64 = i64::MAX;

/// Default truncation order carried by synthesised series.
pub const DEFAULT_TRUNC: i64 = 4;

/// A finitely supported Laurent series `sum_n c_n eps^n` with exact rational
/// coefficients.
///
/// Each series carries a truncation order: coefficients at exponents `<=
/// trunc` are trusted, higher ones are bookkeeping.  Arithmetic keeps the
/// minimum truncation order of its operands and equality is decided on the
/// shared trusted range only.  Series built from exact inputs carry the
/// order [`EXACT`] and compare on their full support.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i64, BigRational>,
    trunc: i64,
}

impl LaurentSeries {
    /// The zero series, exact.
    pub fn zero() -> Self {
        LaurentSeries { coeffs: BTreeMap::new(), trunc: EXACT }
    }

    /// The constant series `1`, exact.
    pub fn one() -> Self {
        Self::monomial(0, BigRational::from_integer(1.into()))
    }

    /// The single term `coeff * eps^exp`, exact.
    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentSeries { coeffs, trunc: EXACT }
    }

    /// Builds a series from `(exponent, coefficient)` pairs with the given
    /// truncation order; zero coefficients are dropped, repeated exponents
    /// are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I, trunc: i64) -> Self {
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (exp, c) in terms {
            let entry = coeffs.entry(exp).or_insert_with(BigRational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs, trunc }
    }

    /// Truncation order: coefficients at exponents `<= trunc()` are trusted.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Returns the same series with the truncation order replaced.
    pub fn with_trunc(mut self, trunc: i64) -> Self {
        self.trunc = trunc;
        self
    }

    /// True when every coefficient is exact (truncation order [`EXACT`]).
    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// The coefficient at `exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Stored `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    /// True when the series vanishes on its trusted range.
    pub fn is_zero(&self) -> bool {
        self.coeffs.keys().all(|&e| e > self.trunc)
    }

    /// True when no coefficient is stored at all.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Pointwise sum; the result trusts the smaller of the two ranges.
    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (exp, c) in &other.coeffs {
            let entry = coeffs.entry(*exp).or_insert_with(BigRational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs, trunc: self.trunc.min(other.trunc) }
    }

    /// Pointwise difference; the result trusts the smaller range.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    /// Cauchy product; the result trusts the smaller range.
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let entry = coeffs.entry(ea + eb).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs, trunc: self.trunc.min(other.trunc) }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return LaurentSeries { coeffs: BTreeMap::new(), trunc: self.trunc };
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
            trunc: self.trunc,
        }
    }

    /// The strictly negative powers (the part removed by minimal
    /// subtraction).
    pub fn pole_part(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().filter(|(e, _)| **e < 0).map(|(e, c)| (*e, c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    /// The powers `>= 0` (complement of [`pole_part`](Self::pole_part)).
    pub fn regular_part(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().filter(|(e, _)| **e >= 0).map(|(e, c)| (*e, c.clone())).collect(),
            trunc: self.trunc,
        }
    }
}

impl PartialEq for LaurentSeries {
    /// Compares the two series on the shared trusted range.
    fn eq(&self, other: &Self) -> bool {
        let bound = self.trunc.min(other.trunc);
        let keys = self.coeffs.keys().chain(other.coeffs.keys());
        for &exp in keys {
            if exp <= bound && self.coeff(exp) != other.coeff(exp) {
                return false;
            }
        }
        true
    }
}

impl Eq for LaurentSeries {}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.coeffs {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match exp {
                0 => write!(f, "{}", mag)?,
                1 => write!(f, "{}*eps", mag)?,
                _ => write!(f, "{}*eps^{}", mag, exp)?,
            }
        }
        Ok(())
    }
}

/// Wire form: `{"eps": {"-2": "3/1"}, "trunc": 4}`; a `null` (or absent)
/// `trunc` means exact.
#[derive(Serialize, Deserialize)]
struct LaurentWire {
    eps: BTreeMap<String, String>,
    #[serde(default)]
    trunc: Option<i64>,
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = LaurentWire {
            eps: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.to_string(), rational_to_string(c)))
                .collect(),
            trunc: if self.trunc == EXACT { None } else { Some(self.trunc) },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = LaurentWire::deserialize(deserializer)?;
        let mut coeffs = BTreeMap::new();
        for (e, c) in wire.eps {
            let exp: i64 = e.parse().map_err(|_| D::Error::custom(format!("bad exponent `{e}`")))?;
            let coeff = rational_from_string(&c)
                .ok_or_else(|| D::Error::custom(format!("bad rational `{c}`")))?;
            if !coeff.is_zero() {
                coeffs.insert(exp, coeff);
            }
        }
        Ok(LaurentSeries { coeffs, trunc: wire.trunc.unwrap_or(EXACT) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn sample() -> LaurentSeries {
        LaurentSeries::from_terms([(-2, q(3)), (0, q(5)), (1, q(-1))], EXACT)
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = sample();
        let b = LaurentSeries::monomial(-1, q(2));
        let sum = a.add(&b);
        assert_eq!(sum.coeff(-2), q(3));
        assert_eq!(sum.coeff(-1), q(2));
        let prod = a.mul(&b);
        assert_eq!(prod.coeff(-3), q(6));
        assert_eq!(prod.coeff(-1), q(10));
        assert_eq!(prod.coeff(0), q(-2));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn pole_and_regular_parts_are_complementary() {
        let a = sample();
        assert_eq!(a.pole_part().add(&a.regular_part()), a);
        assert!(a.pole_part().max_exponent().unwrap() < 0);
        assert!(a.regular_part().min_exponent().unwrap() >= 0);
        // The pole projector is idempotent and kills the regular part.
        assert_eq!(a.pole_part().pole_part(), a.pole_part());
        assert!(a.regular_part().pole_part().is_zero());
    }

    #[test]
    fn equality_respects_the_trusted_range() {
        let a = LaurentSeries::from_terms([(0, q(1)), (5, q(7))], 4);
        let b = LaurentSeries::from_terms([(0, q(1))], EXACT);
        // They differ only above the trusted order of `a`.
        assert_eq!(a, b);
        let c = LaurentSeries::from_terms([(0, q(1)), (3, q(7))], 4);
        assert_ne!(c, b);
    }

    #[test]
    fn multiplication_tracks_truncation() {
        let a = LaurentSeries::from_terms([(0, q(1))], 4);
        let b = LaurentSeries::one();
        assert_eq!(a.mul(&b).trunc(), 4);
        assert_eq!(b.mul(&b).trunc(), EXACT);
    }

    #[test]
    fn serde_round_trip() {
        let a = sample().with_trunc(4);
        let text = serde_json::to_string(&a).unwrap();
        let back: LaurentSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
        assert_eq!(back.trunc(), 4);
        assert!(text.contains("\"-2\":\"3/1\""));
    }
}
