//! The two commutative target algebras regularised amplitudes live in, and
//! a tagged value type that keeps them from mixing.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentSeries;
use super::poly::MomentumPolynomial;
use super::AlgebraError;

/// Which target algebra a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    /// Laurent series in the regulator only; subtraction projects onto the
    /// pole part, independently of any graph.
    A,
    /// Polynomials in external momentum variables with series coefficients;
    /// subtraction is a Taylor truncation whose order depends on the graph.
    B,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::A => write!(f, "A"),
            Model::B => write!(f, "B"),
        }
    }
}

/// A value in one of the two target algebras.
///
/// All arithmetic is fallible: combining a [`Model::A`] value with a
/// [`Model::B`] value is a type error surfaced as
/// [`AlgebraError::MixedModels`], never a silent coercion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", content = "value")]
pub enum TargetElement {
    /// A Laurent series (model A).
    #[serde(rename = "A")]
    Laurent(LaurentSeries),
    /// A momentum polynomial (model B).
    #[serde(rename = "B")]
    Poly(MomentumPolynomial),
}

impl TargetElement {
    /// The zero of the given model.
    pub fn zero(model: Model) -> Self {
        match model {
            Model::A => TargetElement::Laurent(LaurentSeries::zero()),
            Model::B => TargetElement::Poly(MomentumPolynomial::zero()),
        }
    }

    /// The unit of the given model.
    pub fn one(model: Model) -> Self {
        match model {
            Model::A => TargetElement::Laurent(LaurentSeries::one()),
            Model::B => TargetElement::Poly(MomentumPolynomial::one()),
        }
    }

    /// The model this value belongs to.
    pub fn model(&self) -> Model {
        match self {
            TargetElement::Laurent(_) => Model::A,
            TargetElement::Poly(_) => Model::B,
        }
    }

    /// True when the value vanishes (on the trusted range of its
    /// coefficients).
    pub fn is_zero(&self) -> bool {
        match self {
            TargetElement::Laurent(s) => s.is_zero(),
            TargetElement::Poly(p) => p.is_zero(),
        }
    }

    /// Sum, failing on mixed models.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self, other) {
            (TargetElement::Laurent(a), TargetElement::Laurent(b)) => {
                Ok(TargetElement::Laurent(a.add(b)))
            }
            (TargetElement::Poly(a), TargetElement::Poly(b)) => Ok(TargetElement::Poly(a.add(b))),
            _ => Err(AlgebraError::MixedModels(self.model(), other.model())),
        }
    }

    /// Difference, failing on mixed models.
    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    /// Product, failing on mixed models.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        match (self, other) {
            (TargetElement::Laurent(a), TargetElement::Laurent(b)) => {
                Ok(TargetElement::Laurent(a.mul(b)))
            }
            (TargetElement::Poly(a), TargetElement::Poly(b)) => Ok(TargetElement::Poly(a.mul(b))),
            _ => Err(AlgebraError::MixedModels(self.model(), other.model())),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        match self {
            TargetElement::Laurent(s) => TargetElement::Laurent(s.neg()),
            TargetElement::Poly(p) => TargetElement::Poly(p.neg()),
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, k: &num::BigRational) -> Self {
        match self {
            TargetElement::Laurent(s) => TargetElement::Laurent(s.scale(k)),
            TargetElement::Poly(p) => {
                TargetElement::Poly(p.scale(&LaurentSeries::monomial(0, k.clone())))
            }
        }
    }

    /// Borrows the series, failing when this is a polynomial value.
    pub fn as_laurent(&self) -> Result<&LaurentSeries, AlgebraError> {
        match self {
            TargetElement::Laurent(s) => Ok(s),
            TargetElement::Poly(_) => {
                Err(AlgebraError::WrongModel { expected: Model::A, got: Model::B })
            }
        }
    }

    /// Borrows the polynomial, failing when this is a series value.
    pub fn as_poly(&self) -> Result<&MomentumPolynomial, AlgebraError> {
        match self {
            TargetElement::Poly(p) => Ok(p),
            TargetElement::Laurent(_) => {
                Err(AlgebraError::WrongModel { expected: Model::B, got: Model::A })
            }
        }
    }
}

impl fmt::Display for TargetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetElement::Laurent(s) => write!(f, "{s}"),
            TargetElement::Poly(p) => write!(f, "{p}"),
        }
    }
}
