//! Subtraction schemes: for each graph, a projector pair splitting the
//! target algebra into a subtracted part and a kept part.

use std::collections::BTreeSet;

use crate::graph::{DegreeFunction, FeynmanGraph};

use super::laurent::LaurentSeries;
use super::poly::MomentumPolynomial;
use super::target::{Model, TargetElement};
use super::AlgebraError;

/// A subtraction scheme assigns to every graph a linear projector `P⁻` on
/// the target algebra (with complement `P⁺ = id − P⁻`).
///
/// [`Pole`](SubtractionScheme::Pole) works in Model A and keeps the
/// strictly negative regulator powers — the same map for every graph.
/// [`Jet`](SubtractionScheme::Jet) works in Model B and truncates to the
/// Taylor jet of momentum degree at most the graph's subtraction degree, so
/// the projector genuinely depends on the graph.
#[derive(Clone, Debug)]
pub enum SubtractionScheme {
    /// Model A: project onto the pole part of the series.
    Pole,
    /// Model B: truncate at the subtraction degree given by the enclosed
    /// degree function.
    Jet(DegreeFunction),
}

impl SubtractionScheme {
    /// The target algebra this scheme operates in.
    pub fn model(&self) -> Model {
        match self {
            SubtractionScheme::Pole => Model::A,
            SubtractionScheme::Jet(_) => Model::B,
        }
    }

    /// A short stable name for reports.
    pub fn name(&self) -> &'static str {
        match self {
            SubtractionScheme::Pole => "pole",
            SubtractionScheme::Jet(df) => df.name(),
        }
    }

    /// The jet order used for `graph`, or `None` when the scheme is
    /// graph-independent.
    pub fn subtraction_order(&self, graph: &FeynmanGraph) -> Result<Option<i64>, AlgebraError> {
        match self {
            SubtractionScheme::Pole => Ok(None),
            SubtractionScheme::Jet(df) => {
                let a = df
                    .degree(graph)
                    .map_err(|e| AlgebraError::MissingDegree(e.to_string()))?;
                Ok(Some(a))
            }
        }
    }

    /// Applies the subtracted-part projector `P⁻` for `graph` to `x`.
    pub fn p_minus(&self, graph: &FeynmanGraph, x: &TargetElement) -> Result<TargetElement, AlgebraError> {
        match (self, x) {
            (SubtractionScheme::Pole, TargetElement::Laurent(s)) => {
                Ok(TargetElement::Laurent(s.pole_part()))
            }
            (SubtractionScheme::Jet(_), TargetElement::Poly(p)) => {
                let order = self.subtraction_order(graph)?.expect("jet scheme has an order");
                Ok(TargetElement::Poly(p.taylor_jet(order)))
            }
            _ => Err(AlgebraError::WrongModel { expected: self.model(), got: x.model() }),
        }
    }

    /// Applies the kept-part projector `P⁺ = id − P⁻` for `graph` to `x`.
    pub fn p_plus(&self, graph: &FeynmanGraph, x: &TargetElement) -> Result<TargetElement, AlgebraError> {
        x.try_sub(&self.p_minus(graph, x)?)
    }
}

/// Validates that the variable sets are pairwise disjoint and all orders
/// are at least −1 (the zero-map convention).
fn validate_sets(sets: &[(BTreeSet<String>, i64)]) -> Result<(), AlgebraError> {
    let mut seen: BTreeSet<&String> = BTreeSet::new();
    for (vars, order) in sets {
        if *order < -1 {
            return Err(AlgebraError::JetOrderOutOfRange(*order));
        }
        for v in vars {
            if !seen.insert(v) {
                return Err(AlgebraError::SharedVariable(v.clone()));
            }
        }
    }
    Ok(())
}

/// Checks the first jet composition identity: applying the remainder maps
/// `id − M^(k_i)` over each variable set in turn and then the total-degree
/// jet of order `k` annihilates `x`, provided `k <= Σ(k_i + 1) − 1`.
///
/// The order hypothesis is enforced; calling outside it is an error, not a
/// failed check.
pub fn jets_kill_remainders(
    x: &MomentumPolynomial,
    sets: &[(BTreeSet<String>, i64)],
    k: i64,
) -> Result<bool, AlgebraError> {
    validate_sets(sets)?;
    let bound: i64 = sets.iter().map(|(_, ki)| ki + 1).sum::<i64>() - 1;
    if k > bound {
        return Err(AlgebraError::JetOrderOutOfRange(k));
    }
    let mut y = x.clone();
    for (vars, ki) in sets {
        y = y.sub(&y.taylor_jet_in(vars, *ki));
    }
    Ok(y.taylor_jet(k).is_zero())
}

/// Checks the second jet composition identity: the composite of the
/// per-set jets `M^(k_i)` is fixed by the total-degree jet of order `k`,
/// provided `k >= Σ k_i` and every variable of `x` lies in some set.
pub fn jets_fix_product(
    x: &MomentumPolynomial,
    sets: &[(BTreeSet<String>, i64)],
    k: i64,
) -> Result<bool, AlgebraError> {
    validate_sets(sets)?;
    for v in x.variables() {
        if !sets.iter().any(|(vars, _)| vars.contains(&v)) {
            return Err(AlgebraError::UncoveredVariable(v));
        }
    }
    let bound: i64 = sets.iter().map(|(_, ki)| *ki).sum();
    if k < bound {
        return Err(AlgebraError::JetOrderOutOfRange(k));
    }
    let mut y = x.clone();
    for (vars, ki) in sets {
        y = y.taylor_jet_in(vars, *ki);
    }
    Ok(y.taylor_jet(k) == y)
}

/// Checks the jet-family identity for a product of functions of disjoint
/// variable sets:
///
/// `M^(k_i)(f) · M^(k_j)(g) = M^(k_i+k_j)( M^(k_i)(f)·g + f·M^(k_j)(g) − f·g )`
///
/// where the outer jet counts total degree over the union of the two sets.
/// The factors must use disjoint variables; sharing one is an error.
pub fn rb_family_check(
    ki: i64,
    kj: i64,
    f: &MomentumPolynomial,
    g: &MomentumPolynomial,
) -> Result<bool, AlgebraError> {
    if ki < -1 {
        return Err(AlgebraError::JetOrderOutOfRange(ki));
    }
    if kj < -1 {
        return Err(AlgebraError::JetOrderOutOfRange(kj));
    }
    let vf = f.variables();
    let vg = g.variables();
    if let Some(shared) = vf.intersection(&vg).next() {
        return Err(AlgebraError::SharedVariable(shared.clone()));
    }
    let jf = f.taylor_jet_in(&vf, ki);
    let jg = g.taylor_jet_in(&vg, kj);
    let lhs = jf.mul(&jg);
    let inner = jf.mul(g).add(&f.mul(&jg)).sub(&f.mul(g));
    let rhs = inner.taylor_jet(ki + kj);
    Ok(lhs == rhs)
}

/// Checks the weight-minus-one identity of the pole projector on series:
///
/// `P⁻(x)·P⁻(y) = P⁻(x·P⁻(y)) + P⁻(P⁻(x)·y) − P⁻(x·y)`.
pub fn rota_baxter_pole_check(x: &LaurentSeries, y: &LaurentSeries) -> bool {
    let px = x.pole_part();
    let py = y.pole_part();
    let lhs = px.mul(&py);
    let rhs = x.mul(&py).pole_part().add(&px.mul(y).pole_part()).sub(&x.mul(y).pole_part());
    lhs == rhs
}
