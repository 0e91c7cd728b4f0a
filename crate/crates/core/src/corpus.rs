//! A built-in collection of small one-particle-irreducible graphs in two
//! scalar theories, used throughout the test suite and by the command-line
//! self-test.
//!
//! Every graph here is superficially divergent, so each one doubles as a
//! generator of the renormalisation Hopf algebra. The collection exercises
//! the interesting structural cases: primitives, strictly nested chains,
//! overlapping one-loop subgraphs, and disjoint pairs.

use crate::graph::{FeynmanGraph, TheoryConfig};

/// Cubic scalar theory in six dimensions (log/quadratic divergences at
/// two and three legs).
pub fn phi3() -> TheoryConfig {
    TheoryConfig::new("phi3", 6, 3).expect("valid theory")
}

/// Quartic scalar theory in four dimensions.
pub fn phi4() -> TheoryConfig {
    TheoryConfig::new("phi4", 4, 4).expect("valid theory")
}

/// One-loop self-energy bubble: two vertices joined by a double edge.
pub fn b1() -> FeynmanGraph {
    FeynmanGraph::new(&phi3(), &["u", "w"], &[("u", "w"), ("u", "w")], &["u", "w"])
        .expect("valid graph")
}

/// Two-loop self-energy with a bubble nested inside a one-loop shell.
pub fn n2() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi3(),
        &["u", "x", "y", "w"],
        &[("u", "w"), ("u", "x"), ("x", "y"), ("x", "y"), ("y", "w")],
        &["u", "w"],
    )
    .expect("valid graph")
}

/// Three-loop self-energy with a doubly nested chain: a bubble inside a
/// two-loop shell inside the outer loop.
pub fn n3() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi3(),
        &["u", "x", "x2", "y2", "y", "w"],
        &[
            ("u", "w"),
            ("u", "x"),
            ("x", "y"),
            ("x", "x2"),
            ("x2", "y2"),
            ("x2", "y2"),
            ("y2", "y"),
            ("y", "w"),
        ],
        &["u", "w"],
    )
    .expect("valid graph")
}

/// Two-loop self-energy with two overlapping one-loop triangles sharing an
/// edge; its one-loop divergent subgraphs overlap, so no spinney contains
/// both.
pub fn o2() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi3(),
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
        &["a", "d"],
    )
    .expect("valid graph")
}

/// Three-loop self-energy with two disjoint bubbles on parallel arms; the
/// wood contains the pair spinney as well as both singletons.
pub fn o3() -> FeynmanGraph {
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
    .expect("valid graph")
}

/// One-loop vertex triangle (three legs, logarithmically divergent).
pub fn t1() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi3(),
        &["a", "b", "c"],
        &[("a", "b"), ("b", "c"), ("c", "a")],
        &["a", "b", "c"],
    )
    .expect("valid graph")
}

/// Two-loop vertex correction: a triangle nested inside an outer triangle.
pub fn t2a() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi3(),
        &["p", "q", "r", "b", "c"],
        &[
            ("p", "q"),
            ("q", "r"),
            ("r", "p"),
            ("q", "b"),
            ("r", "c"),
            ("b", "c"),
        ],
        &["p", "b", "c"],
    )
    .expect("valid graph")
}

/// Two-loop vertex correction with a self-energy bubble on one side of a
/// triangle.
pub fn t2b() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi3(),
        &["a", "m", "n", "b", "c"],
        &[
            ("a", "m"),
            ("m", "n"),
            ("m", "n"),
            ("n", "b"),
            ("b", "c"),
            ("c", "a"),
        ],
        &["a", "b", "c"],
    )
    .expect("valid graph")
}

/// One-loop four-point fish in the quartic theory.
pub fn f1() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi4(),
        &["a", "b"],
        &[("a", "b"), ("a", "b")],
        &["a", "a", "b", "b"],
    )
    .expect("valid graph")
}

/// Two-loop four-point double fish: two one-loop fish sharing a middle
/// vertex, giving two nested-in-parallel divergent subgraphs.
pub fn f2() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi4(),
        &["a", "b", "c"],
        &[("a", "b"), ("a", "b"), ("b", "c"), ("b", "c")],
        &["a", "a", "c", "c"],
    )
    .expect("valid graph")
}

/// Two-loop sunset self-energy in the quartic theory: a triple edge whose
/// one-loop divergent subgraphs are the three bubbles, pairwise
/// overlapping.
pub fn sunset() -> FeynmanGraph {
    FeynmanGraph::new(
        &phi4(),
        &["a", "b"],
        &[("a", "b"), ("a", "b"), ("a", "b")],
        &["a", "b"],
    )
    .expect("valid graph")
}

/// Every corpus graph with its conventional name, in a fixed order.
pub fn all() -> Vec<(&'static str, FeynmanGraph)> {
    vec![
        ("B1", b1()),
        ("N2", n2()),
        ("N3", n3()),
        ("O2", o2()),
        ("O3", o3()),
        ("T1", t1()),
        ("T2a", t2a()),
        ("T2b", t2b()),
        ("F1", f1()),
        ("F2", f2()),
        ("sunset", sunset()),
    ]
}

/// Looks a corpus graph up by name.
pub fn by_name(name: &str) -> Option<FeynmanGraph> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_graph_is_divergent_and_irreducible() {
        for (name, g) in all() {
            assert!(g.is_divergent(), "{name} should be divergent");
            assert!(g.is_one_particle_irreducible(), "{name} should be 1PI");
            assert!(g.loop_number() >= 1, "{name} should carry a loop");
        }
    }

    #[test]
    fn loop_numbers_match_the_shapes() {
        let expect = [
            ("B1", 1),
            ("N2", 2),
            ("N3", 3),
            ("O2", 2),
            ("O3", 3),
            ("T1", 1),
            ("T2a", 2),
            ("T2b", 2),
            ("F1", 1),
            ("F2", 2),
            ("sunset", 2),
        ];
        for ((name, g), (ename, loops)) in all().iter().zip(expect) {
            assert_eq!(*name, ename);
            assert_eq!(g.loop_number(), loops, "{name}");
        }
    }

    #[test]
    fn names_resolve_and_are_distinct_classes() {
        let mut keys = std::collections::BTreeSet::new();
        for (name, g) in all() {
            assert!(by_name(name).is_some());
            assert!(keys.insert(g.canonical_key()), "{name} duplicates a class");
        }
        assert!(by_name("nope").is_none());
    }
}
