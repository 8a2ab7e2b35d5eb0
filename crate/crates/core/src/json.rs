//! JSON documents and DOT export for the CLI surface.
//!
//! Graphs serialize as `{"vertices": [...], "edges": [["a","b"], ...]}`
//! with loops written as repeated endpoints; unordered duplicates are
//! collapsed on load. Emission is deterministic: vertex order is preserved
//! and edges come out sorted by vertex order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphBuilder};
use crate::homotopy::Homotopy;
use crate::map::VertexMap;
use crate::walk::Walk;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> GraphDoc {
        GraphDoc {
            vertices: g.vertex_names().to_vec(),
            edges: g
                .edges()
                .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for name in &self.vertices {
            builder.add_vertex(name.clone())?;
        }
        for (index, (u, v)) in self.edges.iter().enumerate() {
            builder.add_edge(u, v).map_err(|e| match e {
                Error::UnknownVertex(name) => Error::UnknownEndpoint { index, name },
                other => other,
            })?;
        }
        Ok(builder.build())
    }
}

/// `{"source": <graph>, "target": <graph>, "map": {"0": "b", ...}}`.
/// Source and target may be omitted when the surrounding context supplies
/// the graphs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<GraphDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<GraphDoc>,
    pub map: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn from_vertex_map(m: &VertexMap) -> MapDoc {
        MapDoc {
            source: Some(GraphDoc::from_graph(m.source())),
            target: Some(GraphDoc::from_graph(m.target())),
            map: m
                .source()
                .vertex_names()
                .iter()
                .enumerate()
                .map(|(v, name)| (name.clone(), m.image_name(v).to_string()))
                .collect(),
        }
    }

    pub fn to_vertex_map(
        &self,
        fallback_source: Option<&Graph>,
        fallback_target: Option<&Graph>,
    ) -> Result<VertexMap> {
        let source = match (&self.source, fallback_source) {
            (Some(doc), _) => doc.to_graph()?,
            (None, Some(g)) => g.clone(),
            (None, None) => {
                return Err(Error::InvalidMap(
                    "map document has no source graph and none was supplied".to_string(),
                ))
            }
        };
        let target = match (&self.target, fallback_target) {
            (Some(doc), _) => doc.to_graph()?,
            (None, Some(g)) => g.clone(),
            (None, None) => {
                return Err(Error::InvalidMap(
                    "map document has no target graph and none was supplied".to_string(),
                ))
            }
        };
        let pairs: Vec<(&str, &str)> = self
            .map
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        VertexMap::from_pairs(Arc::new(source), Arc::new(target), &pairs)
    }
}

/// `{"frames": [<vertexmap>, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomotopyDoc {
    pub frames: Vec<MapDoc>,
}

impl HomotopyDoc {
    pub fn from_homotopy(h: &Homotopy) -> HomotopyDoc {
        HomotopyDoc {
            frames: h.frames().iter().map(MapDoc::from_vertex_map).collect(),
        }
    }

    pub fn to_homotopy(
        &self,
        fallback_source: Option<&Graph>,
        fallback_target: Option<&Graph>,
    ) -> Result<Homotopy> {
        let frames = self
            .frames
            .iter()
            .map(|doc| doc.to_vertex_map(fallback_source, fallback_target))
            .collect::<Result<Vec<_>>>()?;
        Homotopy::new(frames)
    }
}

/// `{"graph": <graph>, "vertices": ["a", "c", ...]}`; the graph may be
/// omitted when supplied externally.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WalkDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
    pub vertices: Vec<String>,
}

impl WalkDoc {
    pub fn from_walk(w: &Walk) -> WalkDoc {
        WalkDoc {
            graph: Some(GraphDoc::from_graph(w.graph())),
            vertices: w.vertex_names().iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn to_walk(&self, fallback_graph: Option<&Graph>) -> Result<Walk> {
        let graph = match (&self.graph, fallback_graph) {
            (Some(doc), _) => doc.to_graph()?,
            (None, Some(g)) => g.clone(),
            (None, None) => {
                return Err(Error::InvalidWalk(
                    "walk document has no graph and none was supplied".to_string(),
                ))
            }
        };
        let names: Vec<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        Walk::from_names(Arc::new(graph), &names)
    }
}

pub fn parse_graph(bytes: &[u8]) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_slice(bytes).map_err(|e| Error::Json(e.to_string()))?;
    doc.to_graph()
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = serde_json::to_string_pretty(&GraphDoc::from_graph(g))
        .expect("graph documents always serialize");
    out.push('\n');
    out
}

/// DOT for visualization; loops render as self-edges. Output order is the
/// vertex order, so identical graphs print identical bytes.
pub fn emit_dot(g: &Graph) -> String {
    let quote = |name: &str| format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("graph G {\n");
    for name in g.vertex_names() {
        out.push_str(&format!("  {};\n", quote(name)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!(
            "  {} -- {};\n",
            quote(g.name(u)),
            quote(g.name(v))
        ));
    }
    out.push_str("}\n");
    out
}
