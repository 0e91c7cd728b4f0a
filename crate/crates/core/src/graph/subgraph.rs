//! Edge-subset subgraphs: divergent-subgraph enumeration and the wood of
//! all spinneys.

use std::collections::BTreeSet;

use super::graph::{FeynmanGraph, PowerCounting};
use super::GraphError;

/// A subgraph identified by a bitmask over the parent's edge indices; the
/// subgraph's vertices are the endpoints of the selected edges.
pub type EdgeSet = u64;

/// Default cap on internal edges for exhaustive subgraph enumeration.
pub const DEFAULT_EDGE_CAP: usize = 12;

/// A nonempty set of pairwise vertex-disjoint proper divergent
/// one-particle-irreducible subgraphs of a common parent, each stored as an
/// edge subset.  Members are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spinney(Vec<EdgeSet>);

impl Spinney {
    /// Builds a spinney from member edge subsets; members are sorted and
    /// deduplicated.  Structural validity against a parent graph is checked
    /// by the operations that consume spinneys.
    pub fn new(members: impl IntoIterator<Item = EdgeSet>) -> Self {
        let mut v: Vec<EdgeSet> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Spinney(v)
    }

    /// The member edge subsets, ascending.
    pub fn members(&self) -> &[EdgeSet] {
        &self.0
    }

    /// Number of member subgraphs.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the spinney has no members (accepted by contraction as
    /// the identity, never produced by wood enumeration).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Spinney {
    /// Orders by member count first, then lexicographically, so woods list
    /// singleton spinneys before composite ones.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Spinney {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Every spinney of a graph, sorted; the full graph itself is never a
/// member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wood {
    spinneys: Vec<Spinney>,
}

impl Wood {
    /// The spinneys, sorted by member count then lexicographically.
    pub fn spinneys(&self) -> &[Spinney] {
        &self.spinneys
    }

    /// Number of spinneys.
    pub fn len(&self) -> usize {
        self.spinneys.len()
    }

    /// True when the graph has no spinney at all (primitive graphs).
    pub fn is_empty(&self) -> bool {
        self.spinneys.is_empty()
    }

    /// Iterates over the spinneys in order.
    pub fn iter(&self) -> impl Iterator<Item = &Spinney> {
        self.spinneys.iter()
    }
}

/// True when the edges connect all of `vertices` into one component.
fn connected_over(vertices: &BTreeSet<u32>, edges: &[(u32, u32)]) -> bool {
    let Some(&start) = vertices.iter().next() else {
        return true;
    };
    let mut reached = BTreeSet::from([start]);
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for &(a, b) in edges {
            if a == v || b == v {
                for w in [a, b] {
                    if reached.insert(w) {
                        frontier.push(w);
                    }
                }
            }
        }
    }
    vertices.iter().all(|v| reached.contains(v))
}

impl FeynmanGraph {
    /// Validates that every bit of `subset` indexes an existing edge.
    pub(crate) fn check_subset(&self, subset: EdgeSet) -> Result<(), GraphError> {
        let count = self.internal_edge_count();
        let extraneous = if count >= 64 { 0 } else { subset >> count };
        if extraneous != 0 {
            let index = 63 - extraneous.leading_zeros() as usize + count;
            return Err(GraphError::EdgeOutOfRange { index, count });
        }
        Ok(())
    }

    /// The edges selected by a subset, in index order.
    pub(crate) fn subset_edges(&self, subset: EdgeSet) -> Vec<(u32, u32)> {
        self.edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| subset & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect()
    }

    /// The endpoint vertices of a subset's edges.
    pub fn subset_vertices(&self, subset: EdgeSet) -> BTreeSet<u32> {
        self.subset_edges(subset).iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Power counting of the subgraph induced by `subset`, viewed
    /// standalone: its legs are the parent half-edges at its vertices that
    /// are not part of the subset (cut internal edges plus parent legs).
    pub fn subset_power_counting(&self, subset: EdgeSet) -> Result<PowerCounting, GraphError> {
        self.check_subset(subset)?;
        let edges = self.subset_edges(subset);
        let vertices = self.subset_vertices(subset);
        let l = edges.len() as i64;
        let v = vertices.len() as i64;
        let components = {
            let mut remaining: BTreeSet<u32> = vertices.clone();
            let mut count = 0i64;
            while let Some(&seed) = remaining.iter().next() {
                count += 1;
                let mut frontier = vec![seed];
                remaining.remove(&seed);
                while let Some(x) = frontier.pop() {
                    for &(a, b) in &edges {
                        if a == x || b == x {
                            for w in [a, b] {
                                if remaining.remove(&w) {
                                    frontier.push(w);
                                }
                            }
                        }
                    }
                }
            }
            count
        };
        let loops = l - v + components;
        let legs = vertices
            .iter()
            .map(|&x| {
                let total = self.degree_of(x) as i64;
                let inside = edges
                    .iter()
                    .map(|&(a, b)| i64::from(a == x) + i64::from(b == x))
                    .sum::<i64>();
                total - inside
            })
            .sum::<i64>();
        Ok(PowerCounting {
            loops,
            internal_edges: l,
            vertices: v,
            legs,
            omega: self.theory().dimension() * loops - 2 * l,
        })
    }

    /// True when the subset's edges connect all of its endpoints.
    pub fn subset_connected(&self, subset: EdgeSet) -> bool {
        connected_over(&self.subset_vertices(subset), &self.subset_edges(subset))
    }

    /// True when the subset is connected and none of its edges is a bridge
    /// of the induced subgraph.
    pub fn subset_irreducible(&self, subset: EdgeSet) -> bool {
        if !self.subset_connected(subset) {
            return false;
        }
        let vertices = self.subset_vertices(subset);
        let edges = self.subset_edges(subset);
        (0..edges.len()).all(|skip| {
            let (a, b) = edges[skip];
            if a == b {
                return true;
            }
            let rest: Vec<(u32, u32)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &e)| e)
                .collect();
            connected_over(&vertices, &rest)
        })
    }

    /// Enumerates the proper divergent one-particle-irreducible subgraphs
    /// as edge subsets, ascending.  Exhaustive over all edge subsets, so
    /// the edge count is capped at [`DEFAULT_EDGE_CAP`].
    pub fn divergent_subgraphs(&self) -> Result<Vec<EdgeSet>, GraphError> {
        let l = self.internal_edge_count();
        if l > DEFAULT_EDGE_CAP {
            return Err(GraphError::TooManyEdges { count: l, cap: DEFAULT_EDGE_CAP });
        }
        let full: EdgeSet = if l == 0 { 0 } else { (1 << l) - 1 };
        let mut out = Vec::new();
        for subset in 1..full {
            if self.subset_irreducible(subset)
                && self.subset_power_counting(subset)?.omega >= 0
            {
                out.push(subset);
            }
        }
        Ok(out)
    }

    /// Enumerates every spinney: the nonempty sets of pairwise
    /// vertex-disjoint divergent subgraphs.  The full graph is never a
    /// member because only proper subsets qualify.
    pub fn wood(&self) -> Result<Wood, GraphError> {
        let candidates = self.divergent_subgraphs()?;
        let vertex_sets: Vec<BTreeSet<u32>> =
            candidates.iter().map(|&s| self.subset_vertices(s)).collect();
        let mut spinneys = Vec::new();
        // Depth-first extension: each spinney is an increasing sequence of
        // candidate indices with pairwise disjoint vertex sets.
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((chosen, from)) = stack.pop() {
            for i in from..candidates.len() {
                if chosen.iter().all(|&j| vertex_sets[j].is_disjoint(&vertex_sets[i])) {
                    let mut next = chosen.clone();
                    next.push(i);
                    spinneys.push(Spinney::new(next.iter().map(|&j| candidates[j])));
                    stack.push((next, i + 1));
                }
            }
        }
        spinneys.sort();
        Ok(Wood { spinneys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TheoryConfig;

    fn phi3() -> TheoryConfig {
        TheoryConfig::new("phi3", 6, 3).unwrap()
    }

    fn bubble() -> FeynmanGraph {
        FeynmanGraph::new(&phi3(), &["u", "w"], &[("u", "w"), ("u", "w")], &["u", "w"]).unwrap()
    }

    /// Two-point graph with a bubble inserted on each line of a bubble.
    fn two_arm_three_loop() -> FeynmanGraph {
        FeynmanGraph::new(
            &phi3(),
            &["u", "x", "y", "w", "x2", "y2"],
            &[
                ("u", "x"),
                ("x", "y"),
                ("x", "y"),
                ("y", "w"),
                ("u", "x2"),
                ("x2", "y2"),
                ("x2", "y2"),
                ("y2", "w"),
            ],
            &["u", "w"],
        )
        .unwrap()
    }

    #[test]
    fn primitive_graphs_have_no_divergent_subgraphs() {
        assert!(bubble().divergent_subgraphs().unwrap().is_empty());
        assert!(bubble().wood().unwrap().is_empty());
    }

    #[test]
    fn nested_bubble_is_found() {
        // u = w bubble with one line carrying an inner bubble on x, y.
        let g = FeynmanGraph::new(
            &phi3(),
            &["u", "x", "y", "w"],
            &[("u", "w"), ("u", "x"), ("x", "y"), ("x", "y"), ("y", "w")],
            &["u", "w"],
        )
        .unwrap();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 1);
        let vertices = g.subset_vertices(subs[0]);
        let x = g.vertex_index("x").unwrap();
        let y = g.vertex_index("y").unwrap();
        assert_eq!(vertices, BTreeSet::from([x, y]));
        let pc = g.subset_power_counting(subs[0]).unwrap();
        assert_eq!(pc.loops, 1);
        assert_eq!(pc.omega, 2);
        assert_eq!(pc.legs, 2);
        let wood = g.wood().unwrap();
        assert_eq!(wood.len(), 1);
        assert_eq!(wood.spinneys()[0].members(), &[subs[0]]);
    }

    #[test]
    fn disjoint_subgraphs_combine_into_composite_spinneys() {
        let g = two_arm_three_loop();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 2);
        let wood = g.wood().unwrap();
        // Two singletons plus the pair.
        assert_eq!(wood.len(), 3);
        assert_eq!(wood.spinneys()[0].len(), 1);
        assert_eq!(wood.spinneys()[1].len(), 1);
        assert_eq!(wood.spinneys()[2].len(), 2);
        // The composite spinney is exactly the two singletons together.
        assert_eq!(
            wood.spinneys()[2].members(),
            &[subs[0], subs[1]]
        );
    }

    #[test]
    fn wood_matches_a_hand_rolled_filter() {
        // Independent oracle: filter all subsets of the divergent list by
        // pairwise vertex-disjointness.
        for g in [bubble(), two_arm_three_loop()] {
            let subs = g.divergent_subgraphs().unwrap();
            let mut expected = Vec::new();
            for mask in 1u64..(1 << subs.len()) {
                let chosen: Vec<EdgeSet> = (0..subs.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| subs[i])
                    .collect();
                let disjoint = chosen.iter().enumerate().all(|(i, &a)| {
                    chosen.iter().skip(i + 1).all(|&b| {
                        g.subset_vertices(a).is_disjoint(&g.subset_vertices(b))
                    })
                });
                if disjoint {
                    expected.push(Spinney::new(chosen));
                }
            }
            expected.sort();
            let wood = g.wood().unwrap();
            assert_eq!(wood.spinneys(), expected.as_slice());
        }
    }

    #[test]
    fn overlapping_subgraphs_never_share_a_spinney() {
        // Two triangles sharing an edge (b, c): both divergent, overlapping.
        let g = FeynmanGraph::new(
            &phi3(),
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
            &["a", "d"],
        )
        .unwrap();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 2);
        let wood = g.wood().unwrap();
        // Only the two singletons: the triangles share vertices b and c.
        assert_eq!(wood.len(), 2);
        assert!(wood.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn edge_subsets_are_validated() {
        let g = bubble();
        assert!(matches!(
            g.subset_power_counting(0b100),
            Err(GraphError::EdgeOutOfRange { index: 2, count: 2 })
        ));
    }

    #[test]
    fn enumeration_is_capped() {
        // Build a long even cycle: every vertex gets one leg, valence 3.
        let names: Vec<String> = (0..14).map(|i| format!("v{i}")).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = (0..14)
            .map(|i| (name_refs[i], name_refs[(i + 1) % 14]))
            .collect();
        let legs: Vec<&str> = name_refs.clone();
        let g = FeynmanGraph::new(&phi3(), &name_refs, &edges, &legs).unwrap();
        assert!(matches!(
            g.divergent_subgraphs(),
            Err(GraphError::TooManyEdges { count: 14, cap: DEFAULT_EDGE_CAP })
        ));
    }
}
