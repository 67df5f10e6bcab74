//! JSON and DOT formats for dual graphs.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::DualGraph;
use crate::error::GraphError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfedgeJson {
    pub id: u32,
    pub vertex: u32,
}

/// `{"vertices":[{"id","genus"}],"edges":[[h,h]],"legs":{"1":h},"halfedges":[{"id","vertex"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[u32; 2]>,
    #[serde(default)]
    pub legs: BTreeMap<String, u32>,
    pub halfedges: Vec<HalfedgeJson>,
}

impl From<&DualGraph> for GraphJson {
    fn from(g: &DualGraph) -> Self {
        GraphJson {
            vertices: (0..g.num_vertices())
                .map(|v| VertexJson { id: g.vertex_id(v), genus: g.vertex_genus(v) })
                .collect(),
            edges: (0..g.num_edges())
                .map(|e| {
                    let [a, b] = g.edge(e);
                    [g.halfedge_id(a), g.halfedge_id(b)]
                })
                .collect(),
            legs: g.legs().into_iter().map(|(l, h)| (l.to_string(), g.halfedge_id(h))).collect(),
            halfedges: (0..g.num_halfedges())
                .map(|h| HalfedgeJson { id: g.halfedge_id(h), vertex: g.vertex_id(g.halfedge_vertex(h)) })
                .collect(),
        }
    }
}

impl TryFrom<&GraphJson> for DualGraph {
    type Error = GraphError;

    fn try_from(j: &GraphJson) -> Result<Self, GraphError> {
        let vertices: Vec<(u32, u32)> = j.vertices.iter().map(|v| (v.id, v.genus)).collect();
        let halfedges: Vec<(u32, u32)> = j.halfedges.iter().map(|h| (h.id, h.vertex)).collect();
        let edges: Vec<(u32, u32)> = j.edges.iter().map(|&[a, b]| (a, b)).collect();
        let mut legs = Vec::with_capacity(j.legs.len());
        for (label, &h) in &j.legs {
            let label: u32 =
                label.parse().map_err(|_| GraphError::Json(format!("leg label `{label}` is not an integer")))?;
            legs.push((label, h));
        }
        DualGraph::from_parts(&vertices, &halfedges, &edges, &legs)
    }
}

impl DualGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<DualGraph, GraphError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        DualGraph::try_from(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json serializes")
    }

    /// Graphviz rendering: vertices labeled `v{id}:g{genus}`, legs as
    /// pendant point nodes with the marking as edge label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for v in 0..self.num_vertices() {
            let id = self.vertex_id(v);
            let _ = writeln!(out, "  v{id} [label=\"v{id}:g{}\"];", self.vertex_genus(v));
        }
        for e in 0..self.num_edges() {
            let (u, v) = self.edge_endpoints(e);
            let _ = writeln!(out, "  v{} -- v{};", self.vertex_id(u), self.vertex_id(v));
        }
        for (label, h) in self.legs() {
            let v = self.vertex_id(self.halfedge_vertex(h));
            let _ = writeln!(out, "  leg{label} [shape=point];");
            let _ = writeln!(out, "  v{v} -- leg{label} [label=\"{label}\"];");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_format() {
        let s = r#"{"vertices":[{"id":3,"genus":1},{"id":7,"genus":0}],
                    "edges":[[10,11],[12,13]],
                    "legs":{"1":14},
                    "halfedges":[{"id":10,"vertex":3},{"id":11,"vertex":7},
                                 {"id":12,"vertex":3},{"id":13,"vertex":7},{"id":14,"vertex":7}]}"#;
        let g = DualGraph::from_json_str(s).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.genus(), 2);
        assert_eq!(g.leg_vertex(1), Some(1));
        let back = DualGraph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_bad_labels() {
        let s = r#"{"vertices":[{"id":0,"genus":1}],"edges":[],"legs":{"x":0},"halfedges":[{"id":0,"vertex":0}]}"#;
        assert!(matches!(DualGraph::from_json_str(s), Err(GraphError::Json(_))));
        assert!(matches!(DualGraph::from_json_str("{\"vertices\":"), Err(GraphError::Json(_))));
    }

    #[test]
    fn dot_mentions_every_piece() {
        let g = DualGraph::build(&[1, 0], &[(0, 1), (1, 1)], &[(1, 1)]).unwrap();
        let dot = g.to_dot("G");
        assert!(dot.contains("v0 [label=\"v0:g1\"]"));
        assert!(dot.contains("v1 -- v1"));
        assert!(dot.contains("v1 -- leg1 [label=\"1\"]"));
    }
}
