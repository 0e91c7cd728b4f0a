//! Grade-truncated linear forms on the graph algebra: characters,
//! infinitesimal characters, and general forms, together with the
//! convolution product, the character-group inverse, and the
//! exponential/logarithm pair.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{random_laurent, random_poly, subseed, Model, TargetElement};
use crate::graph::fnv1a;

use super::forest::{Forest, GenId};
use super::session::Session;
use super::HopfError;

/// How a form's valuation is stored and what laws it promises.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormKind {
    /// Arbitrary valuation stored per forest.
    General,
    /// Multiplicative and unital; stored on generators, extended by
    /// products on demand.
    Character,
    /// Zero on the unit and on all non-trivial products; stored on
    /// generators.
    Infinitesimal,
}

/// A linear form on forests, valid up to a recorded grade.
///
/// Evaluating (or comparing) a form beyond its validity grade is an
/// error rather than silent garbage. Missing entries within the validity
/// grade denote zero.
#[derive(Clone, Debug)]
pub struct LinearForm {
    kind: FormKind,
    model: Model,
    grade: u32,
    gen_values: BTreeMap<GenId, TargetElement>,
    forest_values: BTreeMap<Forest, TargetElement>,
}

impl LinearForm {
    fn check_grade(session: &Session, grade: u32) -> Result<(), HopfError> {
        if grade > session.max_grade() {
            return Err(HopfError::GradeExceeded {
                requested: grade,
                valid: session.max_grade(),
            });
        }
        Ok(())
    }

    fn check_models(
        model: Model,
        values: impl IntoIterator<Item = Model>,
    ) -> Result<(), HopfError> {
        for got in values {
            if got != model {
                return Err(HopfError::ModelMismatch {
                    expected: model,
                    got,
                });
            }
        }
        Ok(())
    }

    /// The convolution unit `e`: 1 on the unit forest, 0 elsewhere.
    pub fn unit_character(session: &Session, model: Model, grade: u32) -> Result<Self, HopfError> {
        Self::character(session, model, grade, BTreeMap::new())
    }

    /// A character defined by its values on generators and extended
    /// multiplicatively; absent generators take the value zero.
    pub fn character(
        session: &Session,
        model: Model,
        grade: u32,
        gen_values: BTreeMap<GenId, TargetElement>,
    ) -> Result<Self, HopfError> {
        Self::check_grade(session, grade)?;
        Self::check_models(model, gen_values.values().map(TargetElement::model))?;
        let gen_values = gen_values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Self {
            kind: FormKind::Character,
            model,
            grade,
            gen_values,
            forest_values: BTreeMap::new(),
        })
    }

    /// An infinitesimal character: zero on the unit and on products,
    /// defined by its values on generators.
    pub fn infinitesimal(
        session: &Session,
        model: Model,
        grade: u32,
        gen_values: BTreeMap<GenId, TargetElement>,
    ) -> Result<Self, HopfError> {
        Self::check_grade(session, grade)?;
        Self::check_models(model, gen_values.values().map(TargetElement::model))?;
        let gen_values = gen_values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Self {
            kind: FormKind::Infinitesimal,
            model,
            grade,
            gen_values,
            forest_values: BTreeMap::new(),
        })
    }

    /// A general form defined by an explicit per-forest valuation.
    pub fn from_forest_values(
        session: &Session,
        model: Model,
        grade: u32,
        forest_values: BTreeMap<Forest, TargetElement>,
    ) -> Result<Self, HopfError> {
        Self::check_grade(session, grade)?;
        Self::check_models(model, forest_values.values().map(TargetElement::model))?;
        for forest in forest_values.keys() {
            let fg = session.forest_grade(forest);
            if fg > grade {
                return Err(HopfError::GradeExceeded {
                    requested: fg,
                    valid: grade,
                });
            }
        }
        let forest_values = forest_values
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(Self {
            kind: FormKind::General,
            model,
            grade,
            gen_values: BTreeMap::new(),
            forest_values,
        })
    }

    /// A reproducible pseudo-random character: each generator value is
    /// drawn from a stream seeded by the generator's name, so the result
    /// does not depend on registration order.
    pub fn random_character(
        session: &Session,
        model: Model,
        grade: u32,
        seed: u64,
    ) -> Result<Self, HopfError> {
        let mut gen_values = BTreeMap::new();
        for id in session.generators() {
            if session.grade(id) > grade {
                continue;
            }
            let tag = match model {
                Model::A => 1,
                Model::B => 2,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(subseed(
                seed,
                &[fnv1a(session.name(id).as_bytes()), tag],
            ));
            let value = match model {
                Model::A => TargetElement::Laurent(random_laurent(&mut rng, 2)),
                Model::B => {
                    let max_degree = session.omega(id).max(0) as u32 + 1;
                    TargetElement::Poly(random_poly(
                        &mut rng,
                        session.variables(id),
                        max_degree,
                        2,
                    ))
                }
            };
            gen_values.insert(id, value);
        }
        Self::character(session, model, grade, gen_values)
    }

    /// Storage/law kind of the form.
    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// Ambient target algebra.
    pub fn model(&self) -> Model {
        self.model
    }

    /// Validity grade.
    pub fn grade(&self) -> u32 {
        self.grade
    }

    /// The stored value on a generator (characters and infinitesimal
    /// characters only; `None` means zero).
    pub fn generator_value(&self, id: GenId) -> Option<&TargetElement> {
        self.gen_values.get(&id)
    }

    /// Evaluates the form on a forest within its validity grade.
    pub fn eval(&self, session: &Session, forest: &Forest) -> Result<TargetElement, HopfError> {
        let fg = session.forest_grade(forest);
        if fg > self.grade {
            return Err(HopfError::GradeExceeded {
                requested: fg,
                valid: self.grade,
            });
        }
        match self.kind {
            FormKind::Character => {
                let mut acc = TargetElement::one(self.model);
                for (id, mult) in forest.factors() {
                    match self.gen_values.get(&id) {
                        None => return Ok(TargetElement::zero(self.model)),
                        Some(v) => {
                            for _ in 0..mult {
                                acc = acc.try_mul(v)?;
                            }
                        }
                    }
                }
                Ok(acc)
            }
            FormKind::Infinitesimal => Ok(match forest.as_single_generator() {
                Some(id) => self
                    .gen_values
                    .get(&id)
                    .cloned()
                    .unwrap_or_else(|| TargetElement::zero(self.model)),
                None => TargetElement::zero(self.model),
            }),
            FormKind::General => Ok(self
                .forest_values
                .get(forest)
                .cloned()
                .unwrap_or_else(|| TargetElement::zero(self.model))),
        }
    }

    /// Pointwise sum; the result is a general form on the common grade.
    pub fn add(&self, other: &Self, session: &Session) -> Result<Self, HopfError> {
        if self.model != other.model {
            return Err(HopfError::ModelMismatch {
                expected: self.model,
                got: other.model,
            });
        }
        let grade = self.grade.min(other.grade);
        let mut values = BTreeMap::new();
        for forest in session.forests_up_to(grade)? {
            let v = self
                .eval(session, &forest)?
                .try_add(&other.eval(session, &forest)?)?;
            if !v.is_zero() {
                values.insert(forest, v);
            }
        }
        Self::from_forest_values(session, self.model, grade, values)
    }

    /// Pointwise rational rescaling; the result is a general form.
    pub fn scale(&self, factor: &BigRational, session: &Session) -> Result<Self, HopfError> {
        let mut values = BTreeMap::new();
        for forest in session.forests_up_to(self.grade)? {
            let v = self.eval(session, &forest)?.scale(factor);
            if !v.is_zero() {
                values.insert(forest, v);
            }
        }
        Self::from_forest_values(session, self.model, self.grade, values)
    }

    /// Restriction to the forests of grade exactly `n` (zero elsewhere).
    pub fn grade_component(&self, session: &Session, n: u32) -> Result<Self, HopfError> {
        let mut values = BTreeMap::new();
        if n <= self.grade {
            for forest in session.forests_of_grade(n)? {
                let v = self.eval(session, forest)?;
                if !v.is_zero() {
                    values.insert(forest.clone(), v);
                }
            }
        }
        Self::from_forest_values(session, self.model, self.grade, values)
    }

    /// Applies a target-algebra map to every value, producing a general
    /// form.
    pub fn map_values<F>(&self, session: &Session, mut f: F) -> Result<Self, HopfError>
    where
        F: FnMut(&Forest, TargetElement) -> Result<TargetElement, HopfError>,
    {
        let mut values = BTreeMap::new();
        for forest in session.forests_up_to(self.grade)? {
            let v = f(&forest, self.eval(session, &forest)?)?;
            if !v.is_zero() {
                values.insert(forest, v);
            }
        }
        Self::from_forest_values(session, self.model, self.grade, values)
    }

    /// True when the form vanishes on the unit and on every non-trivial
    /// product forest, i.e. satisfies the infinitesimal-character laws.
    pub fn vanishes_on_products(&self, session: &Session) -> Result<bool, HopfError> {
        for forest in session.forests_up_to(self.grade)? {
            if (forest.is_unit() || forest.is_product())
                && !self.eval(session, &forest)?.is_zero()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-tags a numerically infinitesimal form as an infinitesimal
    /// character, erroring when the laws do not actually hold.
    pub fn to_infinitesimal(&self, session: &Session) -> Result<Self, HopfError> {
        if !self.vanishes_on_products(session)? {
            return Err(HopfError::NotInfinitesimal);
        }
        let mut gen_values = BTreeMap::new();
        for id in session.generators() {
            if session.grade(id) > self.grade {
                continue;
            }
            let v = self.eval(session, &Forest::generator(id))?;
            if !v.is_zero() {
                gen_values.insert(id, v);
            }
        }
        Self::infinitesimal(session, self.model, self.grade, gen_values)
    }

    /// Convolution `(f ∗ g)(h) = Σ f(h⁽¹⁾)·g(h⁽²⁾)` over coproduct terms.
    ///
    /// The product of two characters is again a character and is stored
    /// on generators only; any other combination yields a general form.
    pub fn convolve(&self, other: &Self, session: &Session) -> Result<Self, HopfError> {
        if self.model != other.model {
            return Err(HopfError::ModelMismatch {
                expected: self.model,
                got: other.model,
            });
        }
        let grade = self.grade.min(other.grade);
        if self.kind == FormKind::Character && other.kind == FormKind::Character {
            let mut gen_values = BTreeMap::new();
            for id in session.generators() {
                if session.grade(id) > grade {
                    continue;
                }
                let v = self.convolve_at(other, session, &Forest::generator(id))?;
                if !v.is_zero() {
                    gen_values.insert(id, v);
                }
            }
            Self::character(session, self.model, grade, gen_values)
        } else {
            let mut values = BTreeMap::new();
            for forest in session.forests_up_to(grade)? {
                let v = self.convolve_at(other, session, &forest)?;
                if !v.is_zero() {
                    values.insert(forest, v);
                }
            }
            Self::from_forest_values(session, self.model, grade, values)
        }
    }

    fn convolve_at(
        &self,
        other: &Self,
         session: &Session,
        forest: &Forest,
    ) -> Result<TargetElement, HopfError> {
        let cop = session.coproduct(forest)?;
        let mut acc = TargetElement::zero(self.model);
        for (left, right, mult) in cop.terms() {
            let mut term = self
                .eval(session, left)?
                .try_mul(&other.eval(session, right)?)?;
            if mult > 1 {
                term = term.scale(&BigRational::from_integer(BigInt::from(mult)));
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// The inverse of a character in the convolution group, by the graded
    /// recursion `φ⁻¹(Γ) = −φ(Γ) − Σ_S φ⁻¹(Πγ)·φ(Γ/S)`.
    pub fn char_inverse(&self, session: &Session) -> Result<Self, HopfError> {
        if self.kind != FormKind::Character {
            return Err(HopfError::NotACharacter);
        }
        let mut order: Vec<GenId> = session
            .generators()
            .filter(|&id| session.grade(id) <= self.grade)
            .collect();
        order.sort_by_key(|&id| (session.grade(id), id));
        let mut inv: BTreeMap<GenId, TargetElement> = BTreeMap::new();
        for id in order {
            let gen = Forest::generator(id);
            let mut value = self.eval(session, &gen)?.neg();
            for (left, right, mult) in session.coproduct(&gen)?.terms() {
                if left.is_unit() || right.is_unit() {
                    continue;
                }
                let mut inv_left = TargetElement::one(self.model);
                for (fid, m) in left.factors() {
                    match inv.get(&fid) {
                        None => {
                            inv_left = TargetElement::zero(self.model);
                            break;
                        }
                        Some(v) => {
                            for _ in 0..m {
                                inv_left = inv_left.try_mul(v)?;
                            }
                        }
                    }
                }
                let mut term = inv_left.try_mul(&self.eval(session, right)?)?;
                if mult > 1 {
                    term = term.scale(&BigRational::from_integer(BigInt::from(mult)));
                }
                value = value.try_sub(&term)?;
            }
            if !value.is_zero() {
                inv.insert(id, value);
            }
        }
        Self::character(session, self.model, self.grade, inv)
    }

    /// The convolution exponential `exp*(μ) = Σ μ^{∗k}/k!` of an
    /// infinitesimal character; the sum is finite because `μ^{∗k}`
    /// vanishes below grade `k`. The result is a character.
    pub fn exp_star(&self, session: &Session) -> Result<Self, HopfError> {
        if self.kind != FormKind::Infinitesimal {
            return Err(HopfError::NotInfinitesimal);
        }
        let e = Self::unit_character(session, self.model, self.grade)?;
        let mut acc = e.map_values(session, |_, v| Ok(v))?;
        let mut power = self.clone();
        let mut factorial = BigRational::one();
        for k in 1..=self.grade {
            factorial *= BigRational::from_integer(BigInt::from(k));
            let term = power.scale(&(BigRational::one() / factorial.clone()), session)?;
            acc = acc.add(&term, session)?;
            if k < self.grade {
                power = power.convolve(self, session)?;
            }
        }
        let mut gen_values = BTreeMap::new();
        for id in session.generators() {
            if session.grade(id) > self.grade {
                continue;
            }
            let v = acc.eval(session, &Forest::generator(id))?;
            if !v.is_zero() {
                gen_values.insert(id, v);
            }
        }
        Self::character(session, self.model, self.grade, gen_values)
    }

    /// The convolution logarithm `log*(φ) = Σ (−1)^{k+1}(φ−e)^{∗k}/k` of
    /// a character; inverse of [`LinearForm::exp_star`] up to the
    /// validity grade. The result is an infinitesimal character.
    pub fn log_star(&self, session: &Session) -> Result<Self, HopfError> {
        if self.kind != FormKind::Character {
            return Err(HopfError::NotACharacter);
        }
        let e = Self::unit_character(session, self.model, self.grade)?;
        let minus_e = e.scale(&(-BigRational::one()), session)?;
        let delta = self.add(&minus_e, session)?;
        let mut acc = Self::from_forest_values(session, self.model, self.grade, BTreeMap::new())?;
        let mut power = delta.clone();
        for k in 1..=self.grade {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let coeff = BigRational::new(BigInt::from(sign), BigInt::from(k));
            acc = acc.add(&power.scale(&coeff, session)?, session)?;
            if k < self.grade {
                power = power.convolve(&delta, session)?;
            }
        }
        let mut gen_values = BTreeMap::new();
        for id in session.generators() {
            if session.grade(id) > self.grade {
                continue;
            }
            let v = acc.eval(session, &Forest::generator(id))?;
            if !v.is_zero() {
                gen_values.insert(id, v);
            }
        }
        Self::infinitesimal(session, self.model, self.grade, gen_values)
    }

    /// Exact pointwise equality on every forest of grade at most
    /// `grade`, which must lie within both validity grades.
    pub fn eq_up_to(
        &self,
        other: &Self,
        session: &Session,
        grade: u32,
    ) -> Result<bool, HopfError> {
        if grade > self.grade || grade > other.grade {
            return Err(HopfError::GradeExceeded {
                requested: grade,
                valid: self.grade.min(other.grade),
            });
        }
        if self.model != other.model {
            return Ok(false);
        }
        for forest in session.forests_up_to(grade)? {
            if self.eval(session, &forest)? != other.eval(session, &forest)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serialises the valuation as a JSON map from canonical forest keys
    /// to target-element payloads; zero values are omitted.
    pub fn to_json(&self, session: &Session) -> Result<serde_json::Value, HopfError> {
        let mut map = BTreeMap::new();
        for forest in session.forests_up_to(self.grade)? {
            let v = self.eval(session, &forest)?;
            if !v.is_zero() {
                let payload = serde_json::to_value(&v).expect("target elements serialise");
                map.insert(session.forest_key(&forest), payload);
            }
        }
        Ok(serde_json::to_value(map).expect("string map serialises"))
    }
}
