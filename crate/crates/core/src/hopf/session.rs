//! The session: a registry of graph classes closed under subgraph
//! detachment and contraction, with cached coproducts and forest
//! enumeration up to a working grade.

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::corpus;
use crate::graph::FeynmanGraph;

use super::forest::{Forest, GenId, TensorSum};
use super::HopfError;

/// Default working maximum grade.
pub const DEFAULT_MAX_GRADE: u32 = 4;

/// Everything the session knows about one graph class.
#[derive(Clone, Debug)]
struct ClassInfo {
    name: String,
    key: String,
    graph: FeynmanGraph,
    grade: u32,
    omega: i64,
    vars: Vec<String>,
}

/// A registry of divergent one-particle-irreducible graph classes.
///
/// Classes are registered while the session is open; [`Session::close`]
/// then interns every class reachable by detaching or contracting
/// spinneys, computes all generator coproducts, and enumerates the
/// forests of each grade up to the working maximum. After closing, the
/// session is read-only and all Hopf-algebraic operations are available.
#[derive(Debug)]
pub struct Session {
    n_max: u32,
    classes: Vec<ClassInfo>,
    by_key: BTreeMap<String, GenId>,
    by_name: BTreeMap<String, GenId>,
    closed: bool,
    gen_cop: BTreeMap<GenId, TensorSum>,
    forest_cop: RefCell<BTreeMap<Forest, TensorSum>>,
    forests_by_grade: Vec<Vec<Forest>>,
}

impl Session {
    /// An empty open session working up to grade `n_max` (clamped to at
    /// least 1).
    pub fn new(n_max: u32) -> Self {
        Self {
            n_max: n_max.max(1),
            classes: Vec::new(),
            by_key: BTreeMap::new(),
            by_name: BTreeMap::new(),
            closed: false,
            gen_cop: BTreeMap::new(),
            forest_cop: RefCell::new(BTreeMap::new()),
            forests_by_grade: Vec::new(),
        }
    }

    /// A closed session preloaded with the whole built-in graph corpus.
    pub fn with_corpus(n_max: u32) -> Result<Self, HopfError> {
        let mut session = Self::new(n_max);
        for (name, graph) in corpus::all() {
            session.register_named(name, &graph)?;
        }
        session.close()?;
        Ok(session)
    }

    /// The working maximum grade.
    pub fn max_grade(&self) -> u32 {
        self.n_max
    }

    /// True once [`Session::close`] has run.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Registers a graph class under a chosen name.
    ///
    /// The graph must be superficially divergent, one-particle
    /// irreducible and carry at least one loop. Registering the same
    /// class again under the same name is a no-op returning the existing
    /// id; a name collision or a second name for an existing class is an
    /// error.
    pub fn register_named(&mut self, name: &str, graph: &FeynmanGraph) -> Result<GenId, HopfError> {
        if self.closed {
            return Err(HopfError::AlreadyClosed);
        }
        let key = graph.canonical_key();
        if let Some(&id) = self.by_key.get(&key) {
            if self.name(id) == name {
                return Ok(id);
            }
            return Err(HopfError::NameClash {
                name: name.to_string(),
                existing: self.name(id).to_string(),
            });
        }
        if let Some(&id) = self.by_name.get(name) {
            return Err(HopfError::NameClash {
                name: name.to_string(),
                existing: self.name(id).to_string(),
            });
        }
        self.insert_class(name.to_string(), key, graph)
    }

    /// Looks a graph class up by canonical form, interning it under its
    /// fingerprint name when new. Only available while closing.
    fn intern(&mut self, graph: &FeynmanGraph) -> Result<GenId, HopfError> {
        let key = graph.canonical_key();
        if let Some(&id) = self.by_key.get(&key) {
            return Ok(id);
        }
        let name = graph.class_fingerprint();
        self.insert_class(name, key, graph)
    }

    fn insert_class(
        &mut self,
        name: String,
        key: String,
        graph: &FeynmanGraph,
    ) -> Result<GenId, HopfError> {
        let reject = |reason: &str| HopfError::NotAGenerator {
            name: name.clone(),
            reason: reason.to_string(),
        };
        if !graph.is_divergent() {
            return Err(reject("superficial degree of divergence is negative"));
        }
        if !graph.is_one_particle_irreducible() {
            return Err(reject("not one-particle irreducible"));
        }
        if graph.loop_number() < 1 {
            return Err(reject("carries no loops"));
        }
        if self.by_name.contains_key(&name) {
            return Err(HopfError::NameClash {
                name: name.clone(),
                existing: name,
            });
        }
        let id = GenId(self.classes.len() as u32);
        let var_count = std::cmp::max(1, graph.leg_count() as i64 - 1);
        let vars = (1..=var_count).map(|i| format!("p_{name}_{i}")).collect();
        self.by_key.insert(key.clone(), id);
        self.by_name.insert(name.clone(), id);
        self.classes.push(ClassInfo {
            name,
            key,
            grade: graph.loop_number() as u32,
            omega: graph.power_counting().omega,
            vars,
            graph: graph.clone(),
        });
        Ok(id)
    }

    /// Interns every class reachable by detachment and contraction,
    /// computes all generator coproducts and enumerates forests. A second
    /// call is a no-op.
    pub fn close(&mut self) -> Result<(), HopfError> {
        if self.closed {
            return Ok(());
        }
        let mut idx = 0;
        while idx < self.classes.len() {
            let id = GenId(idx as u32);
            let graph = self.classes[idx].graph.clone();
            let wood = graph.wood()?;
            let mut sum = TensorSum::zero();
            let gen = Forest::generator(id);
            sum.add_term(gen.clone(), Forest::unit(), 1);
            sum.add_term(Forest::unit(), gen, 1);
            for spinney in wood.spinneys() {
                let mut left = Forest::unit();
                for &member in spinney.members() {
                    let part = graph.detach(member)?;
                    let pid = self.intern(&part)?;
                    left = left.mul(&Forest::generator(pid));
                }
                let reduced = graph.contract(spinney)?;
                let rid = self.intern(&reduced)?;
                sum.add_term(left, Forest::generator(rid), 1);
            }
            self.gen_cop.insert(id, sum);
            idx += 1;
        }
        self.closed = true;
        self.build_forests();
        Ok(())
    }

    fn require_closed(&self) -> Result<(), HopfError> {
        if self.closed {
            Ok(())
        } else {
            Err(HopfError::NotClosed)
        }
    }

    /// Number of registered classes.
    pub fn generator_count(&self) -> usize {
        self.classes.len()
    }

    /// All class ids in registration order.
    pub fn generators(&self) -> impl Iterator<Item = GenId> {
        (0..self.classes.len() as u32).map(GenId)
    }

    /// Resolves a class by its registered name.
    pub fn generator_by_name(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    /// Resolves a graph to its class, if registered.
    pub fn lookup(&self, graph: &FeynmanGraph) -> Option<GenId> {
        self.by_key.get(&graph.canonical_key()).copied()
    }

    /// The registered name of a class.
    pub fn name(&self, id: GenId) -> &str {
        &self.classes[id.0 as usize].name
    }

    /// The canonical form key of a class.
    pub fn key(&self, id: GenId) -> &str {
        &self.classes[id.0 as usize].key
    }

    /// The representative graph of a class.
    pub fn graph(&self, id: GenId) -> &FeynmanGraph {
        &self.classes[id.0 as usize].graph
    }

    /// The grade (loop number) of a class.
    pub fn grade(&self, id: GenId) -> u32 {
        self.classes[id.0 as usize].grade
    }

    /// The superficial degree of divergence of a class.
    pub fn omega(&self, id: GenId) -> i64 {
        self.classes[id.0 as usize].omega
    }

    /// The external momentum variable names attached to a class (one per
    /// independent external momentum, at least one).
    pub fn variables(&self, id: GenId) -> &[String] {
        &self.classes[id.0 as usize].vars
    }

    /// Total grade of a forest.
    pub fn forest_grade(&self, forest: &Forest) -> u32 {
        forest.factors().map(|(id, m)| self.grade(id) * m).sum()
    }

    /// Human-readable canonical key of a forest: factor names sorted and
    /// joined with `*`, powers written `^k`, unit written `1`.
    pub fn forest_key(&self, forest: &Forest) -> String {
        if forest.is_unit() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = forest
            .factors()
            .map(|(id, m)| {
                if m == 1 {
                    self.name(id).to_string()
                } else {
                    format!("{}^{}", self.name(id), m)
                }
            })
            .collect();
        parts.sort();
        parts.join("*")
    }

    /// The coproduct of a forest, from the session cache.
    ///
    /// For a single class this is the three-part sum over the wood; for a
    /// product it is the componentwise product of the factors'
    /// coproducts.
    pub fn coproduct(&self, forest: &Forest) -> Result<TensorSum, HopfError> {
        self.require_closed()?;
        if let Some(hit) = self.forest_cop.borrow().get(forest) {
            return Ok(hit.clone());
        }
        let mut out = TensorSum::one();
        for (id, mult) in forest.factors() {
            let gen = self.gen_cop.get(&id).expect("closed session has all coproducts");
            for _ in 0..mult {
                out = out.product(gen);
            }
        }
        self.forest_cop
            .borrow_mut()
            .insert(forest.clone(), out.clone());
        Ok(out)
    }

    /// All forests of grade exactly `grade`, in canonical order.
    pub fn forests_of_grade(&self, grade: u32) -> Result<&[Forest], HopfError> {
        self.require_closed()?;
        if grade > self.n_max {
            return Err(HopfError::GradeExceeded {
                requested: grade,
                valid: self.n_max,
            });
        }
        Ok(&self.forests_by_grade[grade as usize])
    }

    /// All forests of grade at most `grade` (including the unit), in
    /// ascending grade then canonical order.
    pub fn forests_up_to(&self, grade: u32) -> Result<Vec<Forest>, HopfError> {
        self.require_closed()?;
        if grade > self.n_max {
            return Err(HopfError::GradeExceeded {
                requested: grade,
                valid: self.n_max,
            });
        }
        let mut out = Vec::new();
        for g in 0..=grade {
            out.extend(self.forests_by_grade[g as usize].iter().cloned());
        }
        Ok(out)
    }

    fn build_forests(&mut self) {
        let gens: Vec<(GenId, u32)> = self
            .generators()
            .map(|id| (id, self.grade(id)))
            .filter(|&(_, g)| g <= self.n_max)
            .collect();
        let mut by_grade: Vec<Vec<Forest>> = vec![Vec::new(); (self.n_max + 1) as usize];
        let mut current: Vec<(GenId, u32)> = Vec::new();
        enumerate_forests(&gens, 0, 0, self.n_max, &mut current, &mut by_grade);
        for bucket in &mut by_grade {
            bucket.sort();
        }
        self.forests_by_grade = by_grade;
    }
}

fn enumerate_forests(
    gens: &[(GenId, u32)],
    i: usize,
    grade: u32,
    n_max: u32,
    current: &mut Vec<(GenId, u32)>,
    out: &mut Vec<Vec<Forest>>,
) {
    if i == gens.len() {
        out[grade as usize].push(Forest::from_factors(current.iter().copied()));
        return;
    }
    let (id, g) = gens[i];
    let mut mult = 0;
    while grade + g * mult <= n_max {
        if mult > 0 {
            current.push((id, mult));
        }
        enumerate_forests(gens, i + 1, grade + g * mult, n_max, current, out);
        if mult > 0 {
            current.pop();
        }
        mult += 1;
    }
}
