//! Canonical forms: a deterministic, isomorphism-invariant encoding of a
//! graph, used as the identity of graph classes and as a hash key.

use std::collections::BTreeMap;

use super::graph::FeynmanGraph;

/// 64-bit FNV-1a hash; used to derive short stable names from canonical
/// forms.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Initial vertex colors: degree, self-loop count, and the sorted multiset
/// of leg labels.  Invariant under any vertex renaming.
fn initial_colors(g: &FeynmanGraph) -> Vec<String> {
    (0..g.vertex_count() as u32)
        .map(|v| {
            let self_loops = g.edges().iter().filter(|&&(a, b)| a == v && b == v).count();
            let mut labels: Vec<&str> = g
                .legs()
                .iter()
                .filter(|(_, w)| *w == v)
                .map(|(l, _)| l.as_str())
                .collect();
            labels.sort_unstable();
            format!("d{};s{};[{}]", g.degree_of(v), self_loops, labels.join(","))
        })
        .collect()
}

/// Refines vertex colors by neighbor-color multisets until stable.
fn refined_colors(g: &FeynmanGraph) -> Vec<u32> {
    let n = g.vertex_count() as u32;
    // Compress the string colors into dense integers.
    let compress = |keys: Vec<String>| -> Vec<u32> {
        let mut sorted: Vec<&String> = keys.iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let index: BTreeMap<&String, u32> =
            sorted.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        keys.iter().map(|k| index[k]).collect()
    };
    let mut colors = compress(initial_colors(g));
    loop {
        let next_keys: Vec<String> = (0..n)
            .map(|v| {
                let mut neighbors: Vec<u32> = Vec::new();
                for &(a, b) in g.edges() {
                    if a == v {
                        neighbors.push(colors[b as usize]);
                    }
                    if b == v {
                        neighbors.push(colors[a as usize]);
                    }
                }
                neighbors.sort_unstable();
                format!("{};{neighbors:?}", colors[v as usize])
            })
            .collect();
        let next = compress(next_keys);
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

/// Encodes the graph under a vertex ordering; `order[new] = old`.
fn encode(g: &FeynmanGraph, order: &[u32]) -> String {
    let n = g.vertex_count();
    let mut position = vec![0u32; n];
    for (new, &old) in order.iter().enumerate() {
        position[old as usize] = new as u32;
    }
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (position[a as usize], position[b as usize]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    let mut legs: Vec<Vec<&str>> = vec![Vec::new(); n];
    for (label, v) in g.legs() {
        legs[position[*v as usize] as usize].push(label);
    }
    for slot in &mut legs {
        slot.sort_unstable();
    }
    let edge_text: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    let leg_text: Vec<String> = legs.iter().map(|slot| slot.join(",")).collect();
    format!(
        "D{};v{};n{};E[{}];L[{}]",
        g.theory().dimension(),
        g.theory().valence(),
        n,
        edge_text.join(" "),
        leg_text.join("|")
    )
}

/// All vertex orderings compatible with the refined coloring: vertices are
/// grouped by ascending color, permuted freely within a color class.
fn consistent_orders(colors: &[u32]) -> Vec<Vec<u32>> {
    let mut classes: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(v as u32);
    }
    let mut orders: Vec<Vec<u32>> = vec![Vec::new()];
    for class in classes.values() {
        let mut extended = Vec::new();
        for prefix in &orders {
            for perm in permutations(class) {
                let mut next = prefix.clone();
                next.extend(perm);
                extended.push(next);
            }
        }
        orders = extended;
    }
    orders
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let rest: Vec<u32> =
            items.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The vertex ordering (new → old) that realises the canonical form.
pub(crate) fn canonical_order(g: &FeynmanGraph) -> Vec<u32> {
    let colors = refined_colors(g);
    consistent_orders(&colors)
        .into_iter()
        .min_by_key(|order| encode(g, order))
        .expect("a graph always has at least one vertex ordering")
}

impl FeynmanGraph {
    /// A deterministic string naming this graph's isomorphism class:
    /// graphs get equal keys exactly when a vertex bijection maps one to
    /// the other preserving edges and leg labels.  Vertex names and edge
    /// order never influence the key.
    pub fn canonical_key(&self) -> String {
        encode(self, &canonical_order(self))
    }

    /// A short stable class name derived from the canonical key.
    pub fn class_fingerprint(&self) -> String {
        format!("g_{:016x}", fnv1a(self.canonical_key().as_bytes()))
    }
}
