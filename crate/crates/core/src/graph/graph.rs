//! The graph data model: theories, graphs, power counting, and
//! one-particle irreducibility.

use std::collections::BTreeSet;

use serde::Serialize;

use super::GraphError;

/// A scalar interaction theory: spacetime dimension `D` and the valence of
/// every interaction vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoryConfig {
    name: String,
    dimension: i64,
    valence: u32,
}

impl TheoryConfig {
    /// Builds a theory; the dimension must be at least 1 and the valence at
    /// least 3.
    pub fn new(name: &str, dimension: i64, valence: u32) -> Result<Self, GraphError> {
        if dimension < 1 {
            return Err(GraphError::InvalidTheory {
                name: name.to_string(),
                reason: format!("dimension must be at least 1, got {dimension}"),
            });
        }
        if valence < 3 {
            return Err(GraphError::InvalidTheory {
                name: name.to_string(),
                reason: format!("vertex valence must be at least 3, got {valence}"),
            });
        }
        Ok(TheoryConfig { name: name.to_string(), dimension, valence })
    }

    /// The theory's identifier.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Spacetime dimension `D` used in power counting.
    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    /// Total degree required of every declared interaction vertex.
    pub fn valence(&self) -> u32 {
        self.valence
    }
}

/// Loop count and superficial degree of divergence of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCounting {
    /// Independent loops `L = l − V + 1`.
    pub loops: i64,
    /// Internal edge count `l`.
    pub internal_edges: i64,
    /// Vertex count `V`.
    pub vertices: i64,
    /// External leg count `N`.
    pub legs: i64,
    /// Superficial degree of divergence `ω = D·L − 2l`.
    pub omega: i64,
}

/// A connected multigraph with named vertices, unordered internal edges
/// (self-loops permitted), and labeled external legs.
///
/// Graphs built with [`FeynmanGraph::new`] or
/// [`FeynmanGraph::with_labeled_legs`] enforce the theory valence on every
/// vertex.  Graphs produced by contraction may contain pseudo-vertices of
/// other degrees; they skip the valence check but satisfy every other
/// invariant.
///
/// Two graphs represent the same class when they are isomorphic by a
/// vertex bijection that preserves edges and leg labels; vertex names and
/// edge order never matter.  [`FeynmanGraph::canonical_key`] computes a
/// stable witness of that class.
#[derive(Clone, Debug)]
pub struct FeynmanGraph {
    theory: TheoryConfig,
    vertices: Vec<String>,
    /// Normalized `(min, max)` vertex-index pairs, sorted.
    edges: Vec<(u32, u32)>,
    /// `(label, vertex index)` pairs, sorted by vertex then label.
    legs: Vec<(String, u32)>,
}

impl FeynmanGraph {
    /// Builds a graph with auto-labeled legs: the i-th entry of
    /// `leg_vertices` attaches a leg labeled `"i+1"` to that vertex.
    ///
    /// Validates vertex names, connectivity, and the theory valence.
    pub fn new(
        theory: &TheoryConfig,
        vertices: &[&str],
        edges: &[(&str, &str)],
        leg_vertices: &[&str],
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = (1..=leg_vertices.len()).map(|i| i.to_string()).collect();
        let legs: Vec<(&str, &str)> = labels
            .iter()
            .map(String::as_str)
            .zip(leg_vertices.iter().copied())
            .collect();
        Self::with_labeled_legs(theory, vertices, edges, &legs)
    }

    /// Builds a graph with explicit `(label, vertex)` legs.
    ///
    /// Validates vertex names, connectivity, and the theory valence.
    pub fn with_labeled_legs(
        theory: &TheoryConfig,
        vertices: &[&str],
        edges: &[(&str, &str)],
        legs: &[(&str, &str)],
    ) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let index = |name: &str| -> Result<u32, GraphError> {
            names
                .iter()
                .position(|n| n == name)
                .map(|i| i as u32)
                .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        let mut seen = BTreeSet::new();
        for v in &names {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let edge_indices = edges
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let leg_indices = legs
            .iter()
            .map(|(label, v)| Ok((label.to_string(), index(v)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Self::assemble(theory.clone(), names, edge_indices, leg_indices, true)
    }

    /// Internal constructor over vertex indices; `check_valence` is false
    /// for graphs produced by contraction, which may carry pseudo-vertices.
    pub(crate) fn assemble(
        theory: TheoryConfig,
        vertices: Vec<String>,
        edges: Vec<(u32, u32)>,
        legs: Vec<(String, u32)>,
        check_valence: bool,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let n = vertices.len() as u32;
        let mut norm_edges: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::UnknownVertex(format!("#{a}")));
            }
            if b >= n {
                return Err(GraphError::UnknownVertex(format!("#{b}")));
            }
            norm_edges.push((a.min(b), a.max(b)));
        }
        norm_edges.sort_unstable();
        let mut norm_legs = legs;
        for (_, v) in &norm_legs {
            if *v >= n {
                return Err(GraphError::UnknownVertex(format!("#{v}")));
            }
        }
        norm_legs.sort();
        let g = FeynmanGraph { theory, vertices, edges: norm_edges, legs: norm_legs };
        if let Some(isolated) = g.unreached_vertex() {
            return Err(GraphError::Disconnected {
                isolated: g.vertices[isolated as usize].clone(),
                root: g.vertices[0].clone(),
            });
        }
        if check_valence {
            for i in 0..g.vertices.len() as u32 {
                let got = g.degree_of(i);
                let expected = g.theory.valence();
                if got != expected {
                    return Err(GraphError::WrongValence {
                        vertex: g.vertices[i as usize].clone(),
                        expected,
                        got,
                    });
                }
            }
        }
        Ok(g)
    }

    /// The theory this graph lives in.
    pub fn theory(&self) -> &TheoryConfig {
        &self.theory
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex names in declaration order.
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    /// The index of a named vertex.
    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Internal edges as normalized sorted `(min, max)` index pairs; edge
    /// indices used by subgraph enumeration refer to positions here.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// External legs as `(label, vertex index)` pairs.
    pub fn legs(&self) -> &[(String, u32)] {
        &self.legs
    }

    /// Number of internal edges.
    pub fn internal_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of external legs.
    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// Total degree of a vertex: internal edge endpoints (a self-loop
    /// counts twice) plus attached legs.
    pub fn degree_of(&self, v: u32) -> u32 {
        let ends = self
            .edges
            .iter()
            .map(|&(a, b)| u32::from(a == v) + u32::from(b == v))
            .sum::<u32>();
        let legs = self.legs.iter().filter(|(_, w)| *w == v).count() as u32;
        ends + legs
    }

    /// Loop count, edge/vertex/leg counts, and the superficial degree of
    /// divergence `ω = D·L − 2l`.
    pub fn power_counting(&self) -> PowerCounting {
        let l = self.edges.len() as i64;
        let v = self.vertices.len() as i64;
        let loops = l - v + 1;
        PowerCounting {
            loops,
            internal_edges: l,
            vertices: v,
            legs: self.legs.len() as i64,
            omega: self.theory.dimension() * loops - 2 * l,
        }
    }

    /// Loop number `L = l − V + 1`.
    pub fn loop_number(&self) -> i64 {
        self.power_counting().loops
    }

    /// True when the superficial degree of divergence is nonnegative.
    pub fn is_divergent(&self) -> bool {
        self.power_counting().omega >= 0
    }

    /// True when no internal edge is a bridge.  A single vertex with no
    /// internal edges counts as irreducible by convention, and self-loops
    /// are never bridges.
    pub fn is_one_particle_irreducible(&self) -> bool {
        (0..self.edges.len()).all(|skip| {
            let (a, b) = self.edges[skip];
            a == b || self.reaches_all_skipping(Some(skip))
        })
    }

    /// Index of a vertex unreachable from vertex 0, if any.
    fn unreached_vertex(&self) -> Option<u32> {
        if self.reaches_all_skipping(None) {
            None
        } else {
            let reached = self.reachable_from_zero(None);
            (0..self.vertices.len() as u32).find(|v| !reached.contains(v))
        }
    }

    fn reaches_all_skipping(&self, skip: Option<usize>) -> bool {
        self.reachable_from_zero(skip).len() == self.vertices.len()
    }

    fn reachable_from_zero(&self, skip: Option<usize>) -> BTreeSet<u32> {
        let mut reached = BTreeSet::from([0u32]);
        let mut frontier = vec![0u32];
        while let Some(v) = frontier.pop() {
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                for w in [a, b] {
                    if (a == v || b == v) && reached.insert(w) {
                        frontier.push(w);
                    }
                }
            }
        }
        reached
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi3() -> TheoryConfig {
        TheoryConfig::new("phi3", 6, 3).unwrap()
    }

    fn phi4() -> TheoryConfig {
        TheoryConfig::new("phi4", 4, 4).unwrap()
    }

    #[test]
    fn theory_invariants_are_enforced() {
        assert!(matches!(
            TheoryConfig::new("bad", 0, 3),
            Err(GraphError::InvalidTheory { .. })
        ));
        assert!(matches!(
            TheoryConfig::new("bad", 4, 2),
            Err(GraphError::InvalidTheory { .. })
        ));
    }

    #[test]
    fn construction_validates_names_and_valence() {
        // A cubic vertex with only two attachments is rejected.
        let err = FeynmanGraph::new(&phi3(), &["u", "w"], &[("u", "w")], &["u", "w"]);
        assert!(matches!(
            err,
            Err(GraphError::WrongValence { vertex, expected: 3, got: 2 }) if vertex == "u"
        ));
        let err = FeynmanGraph::new(&phi3(), &["u"], &[("u", "v")], &[]);
        assert!(matches!(err, Err(GraphError::UnknownVertex(v)) if v == "v"));
        let err = FeynmanGraph::new(&phi3(), &["u", "u"], &[], &[]);
        assert!(matches!(err, Err(GraphError::DuplicateVertex(v)) if v == "u"));
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        // Two double-edged pairs with legs, no path between the pairs.
        let err = FeynmanGraph::new(
            &phi4(),
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "b"), ("c", "d"), ("c", "d")],
            &["a", "a", "b", "b", "c", "c", "d", "d"],
        );
        assert!(matches!(
            err,
            Err(GraphError::Disconnected { isolated, root }) if isolated == "c" && root == "a"
        ));
    }

    #[test]
    fn power_counting_matches_the_closed_forms() {
        // Cubic D=6: a bubble with one leg per vertex has N=2, omega = 6-2N.
        let bubble =
            FeynmanGraph::new(&phi3(), &["u", "w"], &[("u", "w"), ("u", "w")], &["u", "w"])
                .unwrap();
        let pc = bubble.power_counting();
        assert_eq!(pc.loops, 1);
        assert_eq!(pc.internal_edges, 2);
        assert_eq!(pc.vertices, 2);
        assert_eq!(pc.legs, 2);
        assert_eq!(pc.omega, 2);
        assert!(bubble.is_divergent());

        // Quartic D=4: double edge with two legs per vertex has N=4, omega = 4-N.
        let f1 = FeynmanGraph::new(
            &phi4(),
            &["a", "b"],
            &[("a", "b"), ("a", "b")],
            &["a", "a", "b", "b"],
        )
        .unwrap();
        assert_eq!(f1.power_counting().omega, 0);

        // A tree has L = 0 and omega = -2l.
        let tree = FeynmanGraph::new(
            &phi3(),
            &["u", "w"],
            &[("u", "w")],
            &["u", "u", "w", "w"],
        );
        // Valence: u has 1 end + 2 legs = 3.
        let tree = tree.unwrap();
        let pc = tree.power_counting();
        assert_eq!(pc.loops, 0);
        assert_eq!(pc.omega, -2);
    }

    #[test]
    fn bridges_break_irreducibility() {
        let bubble =
            FeynmanGraph::new(&phi3(), &["u", "w"], &[("u", "w"), ("u", "w")], &["u", "w"])
                .unwrap();
        assert!(bubble.is_one_particle_irreducible());

        // Two bubbles joined by a single edge: the joining edge is a bridge.
        let chain = FeynmanGraph::new(
            &phi3(),
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "b"), ("b", "c"), ("c", "d"), ("c", "d")],
            &["a", "d"],
        )
        .unwrap();
        assert!(!chain.is_one_particle_irreducible());

        // A lone valent-enough vertex cannot exist in a strict theory, but
        // the reduced constructor allows it; no edges means irreducible.
        let point = FeynmanGraph::assemble(
            phi3(),
            vec!["p".to_string()],
            vec![],
            vec![("1".to_string(), 0), ("2".to_string(), 0)],
            false,
        )
        .unwrap();
        assert!(point.is_one_particle_irreducible());

        // Self-loops are never bridges.
        let tadpole = FeynmanGraph::assemble(
            phi4(),
            vec!["p".to_string()],
            vec![(0, 0)],
            vec![("1".to_string(), 0), ("2".to_string(), 0)],
            false,
        )
        .unwrap();
        assert!(tadpole.is_one_particle_irreducible());
        assert_eq!(tadpole.power_counting().loops, 1);
        assert_eq!(tadpole.power_counting().omega, 2);
        assert_eq!(tadpole.degree_of(0), 4);
    }
}
