//! Subtraction degree functions and the validity inequality they must
//! satisfy.

use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::FeynmanGraph;
use super::subgraph::EdgeSet;
use super::GraphError;

/// Assigns a subtraction degree `a(Γ)` to every divergent graph.
#[derive(Clone, Debug)]
pub enum DegreeFunction {
    /// The smallest valid choice, `a = ω`.
    Minimal,
    /// Oversubtraction: `ā(Γ) = ω(Γ) + Σ ω(γ)` over the proper divergent
    /// irreducible subgraphs, computed by [`critical_degree`].
    Critical,
    /// An explicit table keyed by canonical graph form.
    Custom(BTreeMap<String, i64>),
}

impl DegreeFunction {
    /// A short stable name for reports.
    pub fn name(&self) -> &'static str {
        match self {
            DegreeFunction::Minimal => "minimal",
            DegreeFunction::Critical => "critical",
            DegreeFunction::Custom(_) => "custom",
        }
    }

    /// The degree assigned to `g`.
    ///
    /// The built-in functions are only defined on divergent graphs; a
    /// custom table must contain the graph's canonical form.
    pub fn degree(&self, g: &FeynmanGraph) -> Result<i64, GraphError> {
        match self {
            DegreeFunction::Minimal => {
                let omega = g.power_counting().omega;
                if omega < 0 {
                    return Err(GraphError::NotDivergent { omega });
                }
                Ok(omega)
            }
            DegreeFunction::Critical => critical_degree(g),
            DegreeFunction::Custom(table) => {
                let key = g.canonical_key();
                table
                    .get(&key)
                    .copied()
                    .ok_or(GraphError::MissingDegree { key })
            }
        }
    }
}

/// The oversubtraction degree `ā(g) = ω(g) + Σ ω(γ)`, summing over every
/// proper divergent irreducible subgraph of `g`.
pub fn critical_degree(g: &FeynmanGraph) -> Result<i64, GraphError> {
    let omega = g.power_counting().omega;
    if omega < 0 {
        return Err(GraphError::NotDivergent { omega });
    }
    let mut total = omega;
    for subset in g.divergent_subgraphs()? {
        total += g.subset_power_counting(subset)?.omega;
    }
    Ok(total)
}

/// One failed instance of the degree inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeViolation {
    /// The subgraph `γ` the inequality was checked on, as an edge subset
    /// of the validated graph (the full edge set when `γ` is the graph
    /// itself).
    pub subgraph: EdgeSet,
    /// The spinney members, as edge subsets of the validated graph; empty
    /// for the baseline requirement `a(γ) ≥ ω(γ)`.
    pub spinney: Vec<EdgeSet>,
    /// The degree the function assigns to `γ`.
    pub assigned: i64,
    /// The smallest admissible value on this instance.
    pub required: i64,
}

/// Outcome of validating a degree function on a graph.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    /// True when every instance holds, the graph itself included.
    pub valid: bool,
    /// True when every instance on proper subgraphs holds, regardless of
    /// the graph itself.
    pub valid_on_proper: bool,
    /// The first failed instance, proper subgraphs first.
    pub violation: Option<DegreeViolation>,
}

/// Re-expresses `sub_mask`, a subset of the detached subgraph's edges, in
/// the parent's edge indexing.  Detachment preserves edge order, so the
/// i-th edge of the detached graph is the i-th set bit of `parent_mask`.
fn expand_mask(parent_mask: EdgeSet, sub_mask: EdgeSet) -> EdgeSet {
    let mut out: EdgeSet = 0;
    let mut sub_pos = 0;
    for parent_pos in 0..64 {
        if parent_mask & (1 << parent_pos) != 0 {
            if sub_mask & (1 << sub_pos) != 0 {
                out |= 1 << parent_pos;
            }
            sub_pos += 1;
        }
    }
    out
}

/// Checks the degree inequality
///
/// `a(γ) ≥ ω(γ) + Σ_i (a(γ_i) − ω(γ_i))`
///
/// for every divergent irreducible subgraph `γ` of `g` — the graph itself
/// included — and every spinney `{γ_1, …, γ_k}` of `γ`, together with the
/// baseline `a(γ) ≥ ω(γ)` (the empty-spinney instance).  Returns the first
/// violation; instances on proper subgraphs are checked before the graph
/// itself, and the two scopes are reported separately.
pub fn validate_degree_function(
    a: &DegreeFunction,
    g: &FeynmanGraph,
) -> Result<DegreeReport, GraphError> {
    let full: EdgeSet = if g.internal_edge_count() == 0 {
        0
    } else {
        (1 << g.internal_edge_count()) - 1
    };
    let mut candidates: Vec<(EdgeSet, FeynmanGraph)> = g
        .divergent_subgraphs()?
        .into_iter()
        .map(|mask| Ok((mask, g.detach(mask)?)))
        .collect::<Result<_, GraphError>>()?;
    let proper_count = candidates.len();
    if g.is_divergent() && g.is_one_particle_irreducible() {
        candidates.push((full, g.clone()));
    }

    let mut violation: Option<DegreeViolation> = None;
    let mut valid_on_proper = true;
    for (index, (mask, gamma)) in candidates.iter().enumerate() {
        let assigned = a.degree(gamma)?;
        let omega = gamma.power_counting().omega;
        let mut first_failure: Option<DegreeViolation> = None;
        if assigned < omega {
            first_failure = Some(DegreeViolation {
                subgraph: *mask,
                spinney: Vec::new(),
                assigned,
                required: omega,
            });
        } else {
            for spinney in gamma.wood()?.iter() {
                let mut required = omega;
                for &member in spinney.members() {
                    let part = gamma.detach(member)?;
                    required += a.degree(&part)? - gamma.subset_power_counting(member)?.omega;
                }
                if assigned < required {
                    first_failure = Some(DegreeViolation {
                        subgraph: *mask,
                        spinney: spinney
                            .members()
                            .iter()
                            .map(|&m| expand_mask(*mask, m))
                            .collect(),
                        assigned,
                        required,
                    });
                    break;
                }
            }
        }
        if let Some(found) = first_failure {
            if index < proper_count {
                valid_on_proper = false;
            }
            if violation.is_none() {
                violation = Some(found);
            }
            if index < proper_count {
                break;
            }
        }
    }
    Ok(DegreeReport { valid: violation.is_none(), valid_on_proper, violation })
}
