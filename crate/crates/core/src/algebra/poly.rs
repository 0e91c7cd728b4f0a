//! Sparse multivariate polynomials in named momentum variables, with
//! Laurent-series coefficients and total-degree Taylor truncation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentSeries;

/// A power product of named variables, e.g. `p_a^2 * p_b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub BTreeMap<String, u32>);

impl Monomial {
    /// The empty product (the constant monomial `1`).
    pub fn unit() -> Self {
        Monomial(BTreeMap::new())
    }

    /// A single variable raised to a power; power 0 gives the unit.
    pub fn var(name: &str, power: u32) -> Self {
        let mut m = BTreeMap::new();
        if power > 0 {
            m.insert(name.to_string(), power);
        }
        Monomial(m)
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (v, p) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += p;
        }
        Monomial(m)
    }

    /// The set of variables appearing with nonzero power.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(|s| s.as_str())
    }

    /// Sum of the exponents on the named variables only.
    pub fn degree_in(&self, vars: &std::collections::BTreeSet<String>) -> u32 {
        self.0.iter().filter(|(v, _)| vars.contains(*v)).map(|(_, p)| p).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, p) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *p == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{p}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial `sum_m c_m(eps) * m` over monomials in external
/// momentum variables, with Laurent-series coefficients.
///
/// Zero coefficients are never stored.  Equality compares the union of the
/// two supports coefficient by coefficient, so it inherits the
/// trusted-range semantics of [`LaurentSeries`] equality.
#[derive(Clone, Debug, Default)]
pub struct MomentumPolynomial {
    terms: BTreeMap<Monomial, LaurentSeries>,
}

impl MomentumPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        MomentumPolynomial { terms: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(LaurentSeries::one())
    }

    /// A constant polynomial with the given series coefficient.
    pub fn constant(c: LaurentSeries) -> Self {
        Self::term(Monomial::unit(), c)
    }

    /// A single-term polynomial `c * m`.
    pub fn term(m: Monomial, c: LaurentSeries) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_empty() {
            terms.insert(m, c);
        }
        MomentumPolynomial { terms }
    }

    /// Stored `(monomial, coefficient)` pairs in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentSeries)> {
        self.terms.iter()
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> LaurentSeries {
        self.terms.get(m).cloned().unwrap_or_else(LaurentSeries::zero)
    }

    /// True when every stored coefficient vanishes on its trusted range.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(LaurentSeries::is_zero)
    }

    /// Largest total degree over the support, `None` for the empty
    /// polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// The set of variables appearing in the support.
    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.variables().map(str::to_string))
            .collect()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(existing) => *existing = existing.add(c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_empty());
        MomentumPolynomial { terms }
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        MomentumPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, LaurentSeries> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match terms.get_mut(&m) {
                    Some(existing) => *existing = existing.add(&c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_empty());
        MomentumPolynomial { terms }
    }

    /// Multiplication of every coefficient by a series.
    pub fn scale(&self, k: &LaurentSeries) -> Self {
        let mut terms: BTreeMap<Monomial, LaurentSeries> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.mul(k))).collect();
        terms.retain(|_, c| !c.is_empty());
        MomentumPolynomial { terms }
    }

    /// Taylor truncation: keeps the terms of total degree `<= order` in the
    /// momentum variables.  Negative orders give the zero map.
    pub fn taylor_jet(&self, order: i64) -> Self {
        if order < 0 {
            return Self::zero();
        }
        MomentumPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| i64::from(m.total_degree()) <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Complement of [`taylor_jet`](Self::taylor_jet): the terms of total
    /// degree `> order`.
    pub fn jet_remainder(&self, order: i64) -> Self {
        self.sub(&self.taylor_jet(order))
    }

    /// Taylor truncation counting degree only over the named variables:
    /// keeps the terms whose combined exponent on `vars` is `<= order`.
    /// Exponents on other variables are ignored.  Negative orders give the
    /// zero map.
    pub fn taylor_jet_in(&self, vars: &BTreeSet<String>, order: i64) -> Self {
        if order < 0 {
            return Self::zero();
        }
        MomentumPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| i64::from(m.degree_in(vars)) <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl PartialEq for MomentumPolynomial {
    fn eq(&self, other: &Self) -> bool {
        let keys: BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|m| self.coeff(m) == other.coeff(m))
    }
}

impl Eq for MomentumPolynomial {}

impl fmt::Display for MomentumPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.total_degree() == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// Wire form of one polynomial term.
#[derive(Serialize, Deserialize)]
struct TermWire {
    mono: BTreeMap<String, u32>,
    coef: LaurentSeries,
}

impl Serialize for MomentumPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<TermWire> = self
            .terms
            .iter()
            .map(|(m, c)| TermWire { mono: m.0.clone(), coef: c.clone() })
            .collect();
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MomentumPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire: Vec<TermWire> = Vec::deserialize(deserializer)?;
        let mut out = MomentumPolynomial::zero();
        for t in wire {
            out = out.add(&MomentumPolynomial::term(Monomial(t.mono), t.coef));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn c(n: i64) -> LaurentSeries {
        LaurentSeries::monomial(0, q(n))
    }

    fn x(p: u32) -> Monomial {
        Monomial::var("x", p)
    }

    #[test]
    fn ring_operations() {
        // (2x + 3)(x - 1) = 2x^2 + x - 3
        let a = MomentumPolynomial::term(x(1), c(2)).add(&MomentumPolynomial::constant(c(3)));
        let b = MomentumPolynomial::term(x(1), c(1)).add(&MomentumPolynomial::constant(c(-1)));
        let p = a.mul(&b);
        assert_eq!(p.coeff(&x(2)), c(2));
        assert_eq!(p.coeff(&x(1)), c(1));
        assert_eq!(p.coeff(&Monomial::unit()), c(-3));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn jets_truncate_by_total_degree() {
        let xy = Monomial::var("x", 1).mul(&Monomial::var("y", 1));
        let p = MomentumPolynomial::term(xy.clone(), c(5))
            .add(&MomentumPolynomial::term(x(1), c(2)))
            .add(&MomentumPolynomial::constant(c(7)));
        let j1 = p.taylor_jet(1);
        assert!(j1.coeff(&xy).is_zero());
        assert_eq!(j1.coeff(&x(1)), c(2));
        assert_eq!(j1.coeff(&Monomial::unit()), c(7));
        // Negative order is the zero map; jet + remainder reassembles p.
        assert!(p.taylor_jet(-1).is_zero());
        assert_eq!(p.taylor_jet(1).add(&p.jet_remainder(1)), p);
        // Idempotence at fixed order.
        assert_eq!(p.taylor_jet(1).taylor_jet(1), p.taylor_jet(1));
    }

    #[test]
    fn jet_order_nesting() {
        let p = MomentumPolynomial::term(x(3), c(1))
            .add(&MomentumPolynomial::term(x(2), c(4)))
            .add(&MomentumPolynomial::constant(c(1)));
        // Lower jets factor through higher ones.
        assert_eq!(p.taylor_jet(2).taylor_jet(1), p.taylor_jet(1));
        assert_eq!(p.taylor_jet(1).taylor_jet(2), p.taylor_jet(1));
    }

    #[test]
    fn subset_jets_ignore_other_variables() {
        let xy = Monomial::var("x", 3).mul(&Monomial::var("y", 1));
        let p = MomentumPolynomial::term(xy.clone(), c(1))
            .add(&MomentumPolynomial::term(Monomial::var("y", 4), c(2)));
        let only_x: BTreeSet<String> = ["x".to_string()].into();
        // x^3*y has x-degree 3 > 1; y^4 has x-degree 0.
        let j = p.taylor_jet_in(&only_x, 1);
        assert!(j.coeff(&xy).is_zero());
        assert_eq!(j.coeff(&Monomial::var("y", 4)), c(2));
        // Jetting over every variable agrees with the total-degree jet.
        let all: BTreeSet<String> = p.variables();
        assert_eq!(p.taylor_jet_in(&all, 4), p.taylor_jet(4));
    }

    #[test]
    fn variables_and_degree() {
        let p = MomentumPolynomial::term(Monomial::var("a", 2).mul(&Monomial::var("b", 1)), c(1));
        assert_eq!(p.total_degree(), Some(3));
        let vars: Vec<String> = p.variables().into_iter().collect();
        assert_eq!(vars, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn serde_round_trip() {
        let p = MomentumPolynomial::term(x(2), c(3)).add(&MomentumPolynomial::constant(c(-1)));
        let text = serde_json::to_string(&p).unwrap();
        let back: MomentumPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(p, back);
    }
}
