//! The `.cmg.json` graph file format.
//!
//! ```json
//! {
//!   "format": "chainmail-graph",
//!   "version": 1,
//!   "vertices": [{"id": "v0", "weight": 1}, {"id": "v1", "weight": 1}],
//!   "edges": [{"id": "e0", "ends": ["v0", "v1"], "weight": -1}],
//!   "rotations": {"v0": ["e0.0"], "v1": ["e0.1"]},
//!   "augmented": {"e0": "-1/3"}
//! }
//! ```
//!
//! `rotations` lists the darts leaving each vertex in counterclockwise
//! order; when absent a planar embedding is computed. `augmented` attaches
//! crossing loops with coefficients `-c`, `-1/n` or `inf`. The writer always
//! emits rotations, sorts every list and map by numeric id, and pretty
//! prints, so parsing and rewriting a written file reproduces it byte for
//! byte.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{AugmentedGraph, ChainmailGraph, CrossingCoefficient, Dart, Edge, EdgeId, VertexId};

pub const GRAPH_FORMAT: &str = "chainmail-graph";
pub const GRAPH_VERSION: u32 = 1;

/// Contents of a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphInput {
    Chainmail(ChainmailGraph),
    Augmented(AugmentedGraph),
}

impl GraphInput {
    pub fn graph(&self) -> &ChainmailGraph {
        match self {
            GraphInput::Chainmail(g) => g,
            GraphInput::Augmented(ag) => ag.base(),
        }
    }

    pub fn into_graph(self) -> ChainmailGraph {
        match self {
            GraphInput::Chainmail(g) => g,
            GraphInput::Augmented(ag) => ag.base().clone(),
        }
    }
}

/// Key/value pairs kept in document order; serialized as a JSON object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Pairs<V>(pub Vec<(String, V)>);

impl<V: Serialize> Serialize for Pairs<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Pairs<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PairVisitor<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for PairVisitor<V> {
            type Value = Pairs<V>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, V>()? {
                    out.push((k, v));
                }
                Ok(Pairs(out))
            }
        }
        d.deserialize_map(PairVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct VertexDoc {
    id: String,
    weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct EdgeDoc {
    id: String,
    ends: [String; 2],
    weight: i64,
}

/// Serde image of a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GraphDoc {
    format: String,
    version: u32,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotations: Option<Pairs<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    augmented: Option<Pairs<String>>,
}

impl GraphDoc {
    pub(crate) fn from_graph(g: &ChainmailGraph, augmented: Option<&BTreeMap<EdgeId, CrossingCoefficient>>) -> Self {
        GraphDoc {
            format: GRAPH_FORMAT.into(),
            version: GRAPH_VERSION,
            vertices: g
                .vertices()
                .map(|(v, w)| VertexDoc {
                    id: v.to_string(),
                    weight: w,
                })
                .collect(),
            edges: g
                .edges()
                .map(|(e, edge)| EdgeDoc {
                    id: e.to_string(),
                    ends: [edge.ends[0].to_string(), edge.ends[1].to_string()],
                    weight: edge.weight,
                })
                .collect(),
            rotations: Some(Pairs(
                g.vertex_ids()
                    .map(|v| (v.to_string(), g.rotation(v).iter().map(ToString::to_string).collect()))
                    .collect(),
            )),
            augmented: augmented.map(|a| Pairs(a.iter().map(|(e, c)| (e.to_string(), c.to_string())).collect())),
        }
    }

    pub(crate) fn from_input(input: &GraphInput) -> Self {
        match input {
            GraphInput::Chainmail(g) => Self::from_graph(g, None),
            GraphInput::Augmented(ag) => Self::from_graph(ag.base(), Some(ag.coefficients())),
        }
    }

    pub(crate) fn into_input(self) -> Result<GraphInput> {
        if self.format != GRAPH_FORMAT {
            return Err(Error::Invalid(format!(
                "format is {:?}, expected {GRAPH_FORMAT:?}",
                self.format
            )));
        }
        if self.version != GRAPH_VERSION {
            return Err(Error::Invalid(format!("unsupported version {}", self.version)));
        }
        let mut vertices = BTreeMap::new();
        for v in &self.vertices {
            let id: VertexId = v.id.parse()?;
            if vertices.insert(id, v.weight).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex {id}")));
            }
        }
        let mut edges = BTreeMap::new();
        for e in &self.edges {
            let id: EdgeId = e.id.parse()?;
            let ends = [e.ends[0].parse::<VertexId>()?, e.ends[1].parse::<VertexId>()?];
            for v in ends {
                if !vertices.contains_key(&v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if edges.insert(id, Edge { ends, weight: e.weight }).is_some() {
                return Err(Error::Invalid(format!("duplicate edge {id}")));
            }
        }
        let rotations = match self.rotations {
            None => None,
            Some(Pairs(list)) => {
                let mut rot = BTreeMap::new();
                for (k, darts) in list {
                    let v: VertexId = k.parse()?;
                    if !vertices.contains_key(&v) {
                        return Err(Error::UnknownVertex(v));
                    }
                    let darts = darts
                        .iter()
                        .map(|d| d.parse::<Dart>())
                        .collect::<Result<Vec<_>>>()
                        .map_err(|err| Error::Rotation {
                            vertex: v,
                            reason: err.to_string(),
                        })?;
                    if rot.insert(v, darts).is_some() {
                        return Err(Error::Rotation {
                            vertex: v,
                            reason: "rotation listed twice".into(),
                        });
                    }
                }
                Some(rot)
            }
        };
        let g = ChainmailGraph::from_parts(vertices, edges, rotations)?;
        match self.augmented {
            None => Ok(GraphInput::Chainmail(g)),
            Some(Pairs(list)) => {
                let mut coeffs = BTreeMap::new();
                for (k, c) in list {
                    let e: EdgeId = k.parse()?;
                    g.edge(e)?;
                    let c: CrossingCoefficient =
                        c.parse().map_err(|err: Error| Error::Invalid(format!("{e}: {err}")))?;
                    if coeffs.insert(e, c).is_some() {
                        return Err(Error::Invalid(format!("duplicate coefficient for {e}")));
                    }
                }
                Ok(GraphInput::Augmented(AugmentedGraph::new(g, coeffs)?))
            }
        }
    }
}

/// Map a serde_json failure to a positioned syntax error.
pub(crate) fn json_error(err: serde_json::Error) -> Error {
    Error::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Parse and validate a graph file. Rotations, when given, must be well
/// formed; the sphere condition itself is left to [`ChainmailGraph::validate`].
pub fn parse_graph_file(text: &str) -> Result<GraphInput> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(json_error)?;
    doc.into_input()
}

/// Canonical text of a graph file.
pub fn write_graph_file(input: &GraphInput) -> String {
    let mut s = serde_json::to_string_pretty(&GraphDoc::from_input(input)).expect("graph documents serialize");
    s.push('\n');
    s
}

pub fn write_chainmail(g: &ChainmailGraph) -> String {
    write_graph_file(&GraphInput::Chainmail(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let text = r#"{"format":"chainmail-graph","version":1,"vertices":[{"id":"v0","weight":5}],"edges":[]}"#;
        let GraphInput::Chainmail(g) = parse_graph_file(text).unwrap() else {
            panic!()
        };
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.vertex_weight(VertexId(0)).unwrap(), 5);
    }

    #[test]
    fn augmented_file() {
        let text = r#"{"format":"chainmail-graph","version":1,
            "vertices":[{"id":"v0","weight":1},{"id":"v1","weight":1}],
            "edges":[{"id":"e1","ends":["v0","v1"],"weight":-1}],
            "augmented":{"e1":"-1/3"}}"#;
        let GraphInput::Augmented(ag) = parse_graph_file(text).unwrap() else {
            panic!()
        };
        assert_eq!(ag.coefficient(EdgeId(1)).unwrap(), CrossingCoefficient::Reciprocal(3));
    }

    #[test]
    fn semantic_errors_name_the_id() {
        let text = r#"{"format":"chainmail-graph","version":1,
            "vertices":[{"id":"v0","weight":1}],
            "edges":[{"id":"e0","ends":["v0","v7"],"weight":-1}]}"#;
        let err = parse_graph_file(text).unwrap_err();
        assert_eq!(err, Error::UnknownVertex(VertexId(7)));
        assert!(err.to_string().contains("v7"));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_graph_file("{\n  \"format\": \"chainmail-graph\",\n  \"version\": 1,\n  oops").unwrap_err();
        let Error::Syntax { line, column, .. } = err else {
            panic!("{err:?}")
        };
        assert_eq!(line, 4);
        assert!(column >= 3);
        assert!(parse_graph_file("{}").unwrap_err().is_input_error());
    }

    #[test]
    fn nonplanar_without_rotations() {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push(format!(
                    r#"{{"id":"e{}","ends":["v{a}","v{b}"],"weight":-1}}"#,
                    edges.len()
                ));
            }
        }
        let verts: Vec<String> = (0..5).map(|v| format!(r#"{{"id":"v{v}","weight":0}}"#)).collect();
        let text = format!(
            r#"{{"format":"chainmail-graph","version":1,"vertices":[{}],"edges":[{}]}}"#,
            verts.join(","),
            edges.join(",")
        );
        assert_eq!(parse_graph_file(&text).unwrap_err(), Error::Nonplanar);
    }

    #[test]
    fn canonical_round_trip() {
        let g = ChainmailGraph::from_lists(
            &[(0, 1), (2, 0), (10, 3)],
            &[(0, 0, 2, -1), (11, 2, 10, -2), (3, 10, 0, -1), (4, 0, 0, -1)],
        )
        .unwrap();
        let text = write_chainmail(&g);
        let back = parse_graph_file(&text).unwrap();
        assert_eq!(back.graph(), &g);
        assert_eq!(write_graph_file(&back), text);
        // Numeric, not lexicographic, key order.
        assert!(text.find("\"v2\"").unwrap() < text.find("\"v10\"").unwrap());
    }

    #[test]
    fn duplicate_rotation_keys_are_rejected() {
        let text = r#"{"format":"chainmail-graph","version":1,
            "vertices":[{"id":"v0","weight":1}],"edges":[],
            "rotations":{"v0":[],"v0":[]}}"#;
        assert!(matches!(parse_graph_file(text), Err(Error::Rotation { .. })));
    }
}
