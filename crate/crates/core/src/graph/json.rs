//! The JSON graph document format: a list of theories and a list of named
//! graphs.
//!
//! ```json
//! {
//!   "theories": [{"name": "phi3", "dimension": 6, "valence": 3}],
//!   "graphs": [{
//!     "name": "B1",
//!     "theory": "phi3",
//!     "vertices": ["u", "w"],
//!     "edges": [["u", "w"], ["u", "w"]],
//!     "legs": [["1", "u"], ["2", "w"]]
//!   }]
//! }
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::graph::{FeynmanGraph, TheoryConfig};
use super::GraphError;

/// Wire form of a theory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoryRecord {
    pub name: String,
    pub dimension: i64,
    pub valence: u32,
}

/// Wire form of a graph; `edges` pairs vertex names, `legs` pairs a leg
/// label with a vertex name.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphRecord {
    pub name: String,
    pub theory: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub legs: Vec<(String, String)>,
}

/// A full graph document.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GraphDoc {
    pub theories: Vec<TheoryRecord>,
    pub graphs: Vec<GraphRecord>,
}

/// Decodes and validates a JSON graph document, returning the declared
/// theories and the named graphs in declaration order.
pub fn parse_graph_doc(
    text: &str,
) -> Result<(Vec<TheoryConfig>, Vec<(String, FeynmanGraph)>), GraphError> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| GraphError::BadDocument(e.to_string()))?;
    let mut theories = Vec::new();
    let mut theory_names = BTreeSet::new();
    for t in &doc.theories {
        if !theory_names.insert(t.name.clone()) {
            return Err(GraphError::BadDocument(format!("duplicate theory `{}`", t.name)));
        }
        theories.push(TheoryConfig::new(&t.name, t.dimension, t.valence)?);
    }
    let mut graphs = Vec::new();
    let mut graph_names = BTreeSet::new();
    for g in &doc.graphs {
        if !graph_names.insert(g.name.clone()) {
            return Err(GraphError::BadDocument(format!("duplicate graph `{}`", g.name)));
        }
        let theory = theories
            .iter()
            .find(|t| t.name() == g.theory)
            .ok_or_else(|| GraphError::UnknownTheory {
                graph: g.name.clone(),
                theory: g.theory.clone(),
            })?;
        let vertices: Vec<&str> = g.vertices.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> =
            g.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let legs: Vec<(&str, &str)> =
            g.legs.iter().map(|(l, v)| (l.as_str(), v.as_str())).collect();
        let graph = FeynmanGraph::with_labeled_legs(theory, &vertices, &edges, &legs)?;
        graphs.push((g.name.clone(), graph));
    }
    Ok((theories, graphs))
}

/// Encodes theories and named graphs as a JSON graph document.
pub fn graph_doc_to_json(theories: &[TheoryConfig], graphs: &[(String, FeynmanGraph)]) -> String {
    let doc = GraphDoc {
        theories: theories
            .iter()
            .map(|t| TheoryRecord {
                name: t.name().to_string(),
                dimension: t.dimension(),
                valence: t.valence(),
            })
            .collect(),
        graphs: graphs
            .iter()
            .map(|(name, g)| GraphRecord {
                name: name.clone(),
                theory: g.theory().name().to_string(),
                vertices: g.vertex_names().to_vec(),
                edges: g
                    .edges()
                    .iter()
                    .map(|&(a, b)| {
                        (
                            g.vertex_names()[a as usize].clone(),
                            g.vertex_names()[b as usize].clone(),
                        )
                    })
                    .collect(),
                legs: g
                    .legs()
                    .iter()
                    .map(|(label, v)| (label.clone(), g.vertex_names()[*v as usize].clone()))
                    .collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document always serialises");
    text.push('\n');
    text
}
