//! Contraction of spinneys to pseudo-vertices and detachment of subgraphs
//! into standalone graphs.

use std::collections::{BTreeMap, BTreeSet};

use super::canonical::canonical_order;
use super::graph::FeynmanGraph;
use super::subgraph::{EdgeSet, Spinney};
use super::GraphError;

impl FeynmanGraph {
    /// Validates that the members of `spinney` are proper, irreducible,
    /// divergent, and pairwise vertex-disjoint subgraphs of `self`.
    fn check_spinney(&self, spinney: &Spinney) -> Result<(), GraphError> {
        let full: EdgeSet = if self.internal_edge_count() == 0 {
            0
        } else {
            (1 << self.internal_edge_count()) - 1
        };
        let mut claimed: BTreeMap<u32, usize> = BTreeMap::new();
        for (idx, &member) in spinney.members().iter().enumerate() {
            self.check_subset(member)?;
            if member == 0 {
                return Err(GraphError::InvalidSpinney(format!("member {idx} is empty")));
            }
            if member == full {
                return Err(GraphError::InvalidSpinney(format!(
                    "member {idx} covers every internal edge; the full graph is not a proper subgraph"
                )));
            }
            if !self.subset_irreducible(member) {
                return Err(GraphError::InvalidSpinney(format!(
                    "member {idx} is not one-particle irreducible"
                )));
            }
            let omega = self.subset_power_counting(member)?.omega;
            if omega < 0 {
                return Err(GraphError::InvalidSpinney(format!(
                    "member {idx} is not divergent (omega = {omega})"
                )));
            }
            for v in self.subset_vertices(member) {
                if let Some(&other) = claimed.get(&v) {
                    return Err(GraphError::InvalidSpinney(format!(
                        "members {other} and {idx} share vertex `{}`",
                        self.vertex_names()[v as usize]
                    )));
                }
                claimed.insert(v, idx);
            }
        }
        Ok(())
    }

    /// Contracts each member of `spinney` to a single pseudo-vertex,
    /// dropping its internal edges.  An empty spinney contracts to the
    /// graph itself.
    ///
    /// A fresh pseudo-vertex left with no legs and exactly two half-edges
    /// from two distinct edges is smoothed away: the two edges merge into
    /// one.  Pseudo-vertices carrying legs or a self-loop remain.  This
    /// keeps the superficial degree of divergence of the contraction equal
    /// to that of the original graph, and drops the loop number by exactly
    /// the loops of the contracted members.
    pub fn contract(&self, spinney: &Spinney) -> Result<FeynmanGraph, GraphError> {
        if spinney.is_empty() {
            return Ok(self.clone());
        }
        self.check_spinney(spinney)?;

        // Map every vertex to its representative: members collapse onto
        // their lowest-index vertex.
        let n = self.vertex_count() as u32;
        let mut representative: Vec<u32> = (0..n).collect();
        let mut member_edges: EdgeSet = 0;
        for &member in spinney.members() {
            member_edges |= member;
            let vertices = self.subset_vertices(member);
            let root = *vertices.iter().next().expect("members are nonempty");
            for v in vertices {
                representative[v as usize] = root;
            }
        }

        // Surviving vertices keep declaration order; contracted members
        // appear at their root position under a merged name.
        let mut names: Vec<String> = Vec::new();
        let mut new_index: Vec<Option<u32>> = vec![None; n as usize];
        for v in 0..n {
            if representative[v as usize] == v {
                new_index[v as usize] = Some(names.len() as u32);
                let merged: Vec<&str> = (0..n)
                    .filter(|&w| representative[w as usize] == v)
                    .map(|w| self.vertex_names()[w as usize].as_str())
                    .collect();
                if merged.len() == 1 {
                    names.push(merged[0].to_string());
                } else {
                    names.push(format!("({})", merged.join("+")));
                }
            }
        }
        let map = |v: u32| {
            new_index[representative[v as usize] as usize].expect("roots are retained")
        };

        let mut edges: Vec<(u32, u32)> = self
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| member_edges & (1 << i) == 0)
            .map(|(_, &(a, b))| {
                let (x, y) = (map(a), map(b));
                (x.min(y), x.max(y))
            })
            .collect();
        let mut legs: Vec<(String, u32)> =
            self.legs().iter().map(|(l, v)| (l.clone(), map(*v))).collect();
        let mut pseudo: BTreeSet<u32> = spinney
            .members()
            .iter()
            .map(|&m| {
                let root = *self.subset_vertices(m).iter().next().expect("nonempty");
                new_index[root as usize].expect("roots are retained")
            })
            .collect();

        // Smooth away legless two-valent pseudo-vertices sitting between
        // two distinct edges.
        loop {
            let candidate = pseudo.iter().copied().find(|&p| {
                if legs.iter().any(|(_, v)| *v == p) {
                    return false;
                }
                let half_edges: u32 = edges
                    .iter()
                    .map(|&(a, b)| u32::from(a == p) + u32::from(b == p))
                    .sum();
                let incident = edges.iter().filter(|&&(a, b)| a == p || b == p).count();
                half_edges == 2 && incident == 2
            });
            let Some(p) = candidate else { break };
            let incident: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == p || b == p)
                .map(|(i, _)| i)
                .collect();
            let far = |i: usize| {
                let (a, b) = edges[i];
                if a == p {
                    b
                } else {
                    a
                }
            };
            let (x, y) = (far(incident[0]), far(incident[1]));
            edges.remove(incident[1]);
            edges.remove(incident[0]);
            edges.push((x.min(y), x.max(y)));
            names.remove(p as usize);
            pseudo.remove(&p);
            let shift = |v: u32| if v > p { v - 1 } else { v };
            edges = edges
                .iter()
                .map(|&(a, b)| (shift(a).min(shift(b)), shift(a).max(shift(b))))
                .collect();
            legs = legs.iter().map(|(l, v)| (l.clone(), shift(*v))).collect();
            pseudo = pseudo.iter().map(|&v| shift(v)).collect();
        }

        FeynmanGraph::assemble(self.theory().clone(), names, edges, legs, false)
    }

    /// Extracts the subgraph selected by `subset` as a standalone graph:
    /// its vertices and edges survive unchanged, and every parent
    /// half-edge at those vertices that is not part of the subset (cut
    /// internal edges as well as parent legs) becomes an external leg.
    ///
    /// Leg labels are assigned canonically — `"1"`, `"2"`, … walking the
    /// vertices in canonical order — so isomorphic detachments of
    /// different parents produce identical classes.
    pub fn detach(&self, subset: EdgeSet) -> Result<FeynmanGraph, GraphError> {
        self.check_subset(subset)?;
        if subset == 0 {
            return Err(GraphError::InvalidSpinney(
                "cannot detach an empty edge subset".to_string(),
            ));
        }
        let vertices: Vec<u32> = self.subset_vertices(subset).into_iter().collect();
        let names: Vec<String> =
            vertices.iter().map(|&v| self.vertex_names()[v as usize].clone()).collect();
        let position: BTreeMap<u32, u32> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let edges: Vec<(u32, u32)> = self
            .subset_edges(subset)
            .into_iter()
            .map(|(a, b)| (position[&a], position[&b]))
            .collect();

        // One leg per external half-edge, counted per vertex.
        let leg_counts: Vec<u32> = vertices
            .iter()
            .map(|&v| {
                let total = self.degree_of(v);
                let inside: u32 = self
                    .subset_edges(subset)
                    .iter()
                    .map(|&(a, b)| u32::from(a == v) + u32::from(b == v))
                    .sum();
                total - inside
            })
            .collect();

        // First pass with uniform placeholder labels fixes the canonical
        // vertex order independently of labeling.
        let placeholder: Vec<(String, u32)> = leg_counts
            .iter()
            .enumerate()
            .flat_map(|(v, &k)| (0..k).map(move |_| ("?".to_string(), v as u32)))
            .collect();
        let unlabeled = FeynmanGraph::assemble(
            self.theory().clone(),
            names.clone(),
            edges.clone(),
            placeholder,
            false,
        )?;
        let order = canonical_order(&unlabeled);

        let mut legs: Vec<(String, u32)> = Vec::new();
        let mut next = 1u32;
        for &old in &order {
            for _ in 0..leg_counts[old as usize] {
                legs.push((next.to_string(), old));
                next += 1;
            }
        }
        FeynmanGraph::assemble(self.theory().clone(), names, edges, legs, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TheoryConfig;

    fn phi3() -> TheoryConfig {
        TheoryConfig::new("phi3", 6, 3).unwrap()
    }

    fn phi4() -> TheoryConfig {
        TheoryConfig::new("phi4", 4, 4).unwrap()
    }

    fn bubble() -> FeynmanGraph {
        FeynmanGraph::new(&phi3(), &["u", "w"], &[("u", "w"), ("u", "w")], &["u", "w"]).unwrap()
    }

    fn nested_two_loop() -> FeynmanGraph {
        FeynmanGraph::new(
            &phi3(),
            &["u", "x", "y", "w"],
            &[("u", "w"), ("u", "x"), ("x", "y"), ("x", "y"), ("y", "w")],
            &["u", "w"],
        )
        .unwrap()
    }

    #[test]
    fn empty_spinney_is_the_identity() {
        let g = nested_two_loop();
        let same = g.contract(&Spinney::new([])).unwrap();
        assert_eq!(g.canonical_key(), same.canonical_key());
    }

    #[test]
    fn contracting_the_inner_bubble_smooths_to_the_outer_bubble() {
        let g = nested_two_loop();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 1);
        let contracted = g.contract(&Spinney::new([subs[0]])).unwrap();
        assert_eq!(contracted.canonical_key(), bubble().canonical_key());
        // Loop number drops by the member's loops; omega is preserved.
        assert_eq!(contracted.loop_number(), g.loop_number() - 1);
        assert_eq!(contracted.power_counting().omega, g.power_counting().omega);
    }

    #[test]
    fn three_loop_contractions_reach_both_reduced_shapes() {
        let g = FeynmanGraph::new(
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
        .unwrap();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 2);
        // One bubble contracted: the nested two-loop shape remains.
        let one = g.contract(&Spinney::new([subs[0]])).unwrap();
        assert_eq!(one.canonical_key(), nested_two_loop().canonical_key());
        assert_eq!(one.loop_number(), 2);
        // Both bubbles contracted: the primitive bubble remains.
        let both = g.contract(&Spinney::new([subs[0], subs[1]])).unwrap();
        assert_eq!(both.canonical_key(), bubble().canonical_key());
        assert_eq!(both.loop_number(), 1);
        assert_eq!(both.power_counting().omega, g.power_counting().omega);
    }

    #[test]
    fn contraction_keeps_self_loops_on_legged_pseudo_vertices() {
        // Triple edge between two vertices, one leg each (quartic, D=4).
        let sunset = FeynmanGraph::new(
            &phi4(),
            &["a", "b"],
            &[("a", "b"), ("a", "b"), ("a", "b")],
            &["a", "b"],
        )
        .unwrap();
        let subs = sunset.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 3);
        let contracted = sunset.contract(&Spinney::new([subs[0]])).unwrap();
        // One pseudo-vertex with two legs and the leftover edge as a
        // self-loop; it must not be smoothed away.
        assert_eq!(contracted.vertex_count(), 1);
        assert_eq!(contracted.edges(), &[(0, 0)]);
        assert_eq!(contracted.leg_count(), 2);
        assert_eq!(contracted.power_counting().omega, sunset.power_counting().omega);
        assert_eq!(contracted.loop_number(), 1);
    }

    #[test]
    fn invalid_spinneys_are_rejected() {
        let g = FeynmanGraph::new(
            &phi3(),
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
            &["a", "d"],
        )
        .unwrap();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 2);
        // The two triangles overlap on vertices b and c.
        let overlapping = Spinney::new([subs[0], subs[1]]);
        assert!(matches!(
            g.contract(&overlapping),
            Err(GraphError::InvalidSpinney(msg)) if msg.contains("share vertex")
        ));
        // A single non-irreducible edge is rejected.
        let bridge_like = Spinney::new([0b00001]);
        assert!(matches!(
            g.contract(&bridge_like),
            Err(GraphError::InvalidSpinney(msg)) if msg.contains("irreducible")
        ));
        // The full edge set is not a proper subgraph.
        let everything = Spinney::new([0b11111]);
        assert!(matches!(
            g.contract(&everything),
            Err(GraphError::InvalidSpinney(msg)) if msg.contains("proper")
        ));
    }

    #[test]
    fn detachment_produces_the_standalone_class() {
        let g = nested_two_loop();
        let subs = g.divergent_subgraphs().unwrap();
        let inner = g.detach(subs[0]).unwrap();
        // The detached inner bubble is the primitive bubble class: two cut
        // half-edges become canonical legs "1" and "2".
        assert_eq!(inner.canonical_key(), bubble().canonical_key());
        assert_eq!(inner.leg_count(), 2);
        let mut labels: Vec<&str> = inner.legs().iter().map(|(l, _)| l.as_str()).collect();
        labels.sort_unstable();
        assert_eq!(labels, ["1", "2"]);
    }

    #[test]
    fn detachment_counts_every_cut_half_edge() {
        // Two quartic bubbles sharing a middle vertex.
        let g = FeynmanGraph::new(
            &phi4(),
            &["a", "b", "c"],
            &[("a", "b"), ("a", "b"), ("b", "c"), ("b", "c")],
            &["a", "a", "c", "c"],
        )
        .unwrap();
        let subs = g.divergent_subgraphs().unwrap();
        assert_eq!(subs.len(), 2);
        for &s in &subs {
            let part = g.detach(s).unwrap();
            // Each bubble keeps its double edge and gains four legs: two
            // original plus two cut half-edges at the shared vertex.
            assert_eq!(part.vertex_count(), 2);
            assert_eq!(part.internal_edge_count(), 2);
            assert_eq!(part.leg_count(), 4);
            assert_eq!(part.power_counting().omega, 0);
        }
        // Both detachments are the same class.
        assert_eq!(
            g.detach(subs[0]).unwrap().canonical_key(),
            g.detach(subs[1]).unwrap().canonical_key()
        );
    }

    #[test]
    fn detaching_nothing_is_an_error() {
        let g = bubble();
        assert!(matches!(g.detach(0), Err(GraphError::InvalidSpinney(_))));
    }
}
