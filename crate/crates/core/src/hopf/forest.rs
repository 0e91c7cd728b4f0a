//! Forests — commutative monomials in graph classes — and formal sums of
//! forest tensor pairs.

use std::collections::BTreeMap;

use serde::Serialize;

/// Identifier of a graph class registered in a [`super::Session`].
///
/// Ids are dense indices assigned in registration order; they are only
/// meaningful relative to the session that issued them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub struct GenId(pub(crate) u32);

/// A commutative monomial in graph classes with multiplicities.
///
/// The empty monomial is the algebra unit `1`. Forests are the linear
/// basis of the graph algebra, so linear forms are valued on them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Forest {
    factors: BTreeMap<GenId, u32>,
}

impl Forest {
    /// The empty forest, i.e. the algebra unit.
    pub fn unit() -> Self {
        Self::default()
    }

    /// The forest consisting of a single graph class.
    pub fn generator(id: GenId) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert(id, 1);
        Self { factors }
    }

    /// Builds a forest from `(class, multiplicity)` pairs; zero
    /// multiplicities are dropped, repeated classes accumulate.
    pub fn from_factors(factors: impl IntoIterator<Item = (GenId, u32)>) -> Self {
        let mut out = Self::default();
        for (id, mult) in factors {
            if mult > 0 {
                *out.factors.entry(id).or_insert(0) += mult;
            }
        }
        out
    }

    /// True for the empty forest.
    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total number of factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.values().sum()
    }

    /// True when the forest has at least two factors (counted with
    /// multiplicity), i.e. is a non-trivial product.
    pub fn is_product(&self) -> bool {
        self.factor_count() >= 2
    }

    /// The class when the forest is a single generator, else `None`.
    pub fn as_single_generator(&self) -> Option<GenId> {
        if self.factor_count() == 1 {
            self.factors.keys().next().copied()
        } else {
            None
        }
    }

    /// The `(class, multiplicity)` pairs in ascending class order.
    pub fn factors(&self) -> impl Iterator<Item = (GenId, u32)> + '_ {
        self.factors.iter().map(|(&id, &m)| (id, m))
    }

    /// The product of two forests (multiplicities add).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, mult) in other.factors() {
            *out.factors.entry(id).or_insert(0) += mult;
        }
        out
    }
}

/// A finite sum of `left ⊗ right` forest pairs with positive integer
/// multiplicities, deduplicated by pair.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorSum {
    terms: BTreeMap<(Forest, Forest), u64>,
}

impl TensorSum {
    /// The empty sum.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The sum `1 ⊗ 1`, the coproduct of the unit forest.
    pub fn one() -> Self {
        let mut out = Self::default();
        out.add_term(Forest::unit(), Forest::unit(), 1);
        out
    }

    /// Accumulates `multiplicity` copies of `left ⊗ right`.
    pub fn add_term(&mut self, left: Forest, right: Forest, multiplicity: u64) {
        if multiplicity > 0 {
            *self.terms.entry((left, right)).or_insert(0) += multiplicity;
        }
    }

    /// The deduplicated terms with their multiplicities.
    pub fn terms(&self) -> impl Iterator<Item = (&Forest, &Forest, u64)> {
        self.terms.iter().map(|((l, r), &m)| (l, r, m))
    }

    /// Number of distinct `left ⊗ right` pairs.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Componentwise product of two sums: pairs multiply slotwise and
    /// multiplicities multiply.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (l1, r1, m1) in self.terms() {
            for (l2, r2, m2) in other.terms() {
                out.add_term(l1.mul(l2), r1.mul(r2), m1 * m2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forests_multiply_like_monomials() {
        let a = GenId(0);
        let b = GenId(1);
        let f = Forest::generator(a).mul(&Forest::generator(b));
        let g = Forest::generator(a);
        let fg = f.mul(&g);
        assert_eq!(fg, Forest::from_factors([(a, 2), (b, 1)]));
        assert_eq!(fg.factor_count(), 3);
        assert!(fg.is_product());
        assert!(fg.as_single_generator().is_none());
        assert_eq!(Forest::generator(b).as_single_generator(), Some(b));
        assert!(Forest::unit().is_unit());
        assert_eq!(Forest::from_factors([(a, 0)]), Forest::unit());
        assert_eq!(f.mul(&Forest::unit()), f);
    }

    #[test]
    fn tensor_sums_deduplicate_and_multiply() {
        let a = Forest::generator(GenId(0));
        let b = Forest::generator(GenId(1));
        let mut s = TensorSum::zero();
        s.add_term(a.clone(), b.clone(), 1);
        s.add_term(a.clone(), b.clone(), 2);
        assert_eq!(s.term_count(), 1);
        assert_eq!(s.terms().next().unwrap().2, 3);

        let one = TensorSum::one();
        assert_eq!(one.product(&s), s);
        let sq = s.product(&s);
        let (l, r, m) = sq.terms().next().unwrap();
        assert_eq!(*l, a.mul(&a));
        assert_eq!(*r, b.mul(&b));
        assert_eq!(m, 9);
    }
}
