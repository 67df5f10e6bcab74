use crate::error::GraphError;
use crate::graph::{DualGraph, UnionFind};

/// Contracts the edges `subset`: endpoints of non-loop edges merge (genera
/// add) and each loop is deleted in exchange for one unit of vertex genus.
pub fn contract_edges(g: &DualGraph, subset: &[usize]) -> Result<DualGraph, GraphError> {
    contract_edges_with_map(g, subset).map(|(q, _)| q)
}

/// [`contract_edges`] together with the quotient map on vertices.
///
/// Merged vertices keep the id of their smallest member; surviving
/// half-edges keep their ids.
pub fn contract_edges_with_map(g: &DualGraph, subset: &[usize]) -> Result<(DualGraph, Vec<usize>), GraphError> {
    let mut contracted = vec![false; g.num_edges()];
    for &e in subset {
        if e >= g.num_edges() {
            return Err(GraphError::UnknownEdge(e));
        }
        contracted[e] = true;
    }
    let n = g.num_vertices();
    let mut uf = UnionFind::new(n);
    for e in 0..g.num_edges() {
        if contracted[e] {
            let (u, v) = g.edge_endpoints(e);
            uf.union(u, v);
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut roots = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if class_of[r] == usize::MAX {
            class_of[r] = roots.len();
            roots.push(r);
        }
        class_of[v] = class_of[r];
    }
    let k = roots.len();
    // genus of a class: Σ g_v + (#contracted edges inside) − (#vertices − 1)
    let mut genus = vec![0i64; k];
    let mut size = vec![0i64; k];
    for v in 0..n {
        genus[class_of[v]] += g.vertex_genus(v) as i64;
        size[class_of[v]] += 1;
    }
    for e in 0..g.num_edges() {
        if contracted[e] {
            genus[class_of[g.edge_endpoints(e).0]] += 1;
        }
    }
    let genera: Vec<u32> = (0..k).map(|c| (genus[c] - size[c] + 1) as u32).collect();
    let ids: Vec<u32> = roots.iter().map(|&r| g.vertex_id(r)).collect();

    let keep: Vec<usize> =
        (0..g.num_halfedges()).filter(|&h| g.halfedge_edge(h).is_none_or(|e| !contracted[e])).collect();
    let mut vertices = Vec::with_capacity(k);
    for c in 0..k {
        vertices.push((ids[c], genera[c]));
    }
    let halfedges: Vec<(u32, u32)> =
        keep.iter().map(|&h| (g.halfedge_id(h), ids[class_of[g.halfedge_vertex(h)]])).collect();
    let edges: Vec<(u32, u32)> = (0..g.num_edges())
        .filter(|&e| !contracted[e])
        .map(|e| {
            let [a, b] = g.edge(e);
            (g.halfedge_id(a), g.halfedge_id(b))
        })
        .collect();
    let legs: Vec<(u32, u32)> = g.legs().into_iter().map(|(l, h)| (l, g.halfedge_id(h))).collect();
    let q = DualGraph::from_parts_with_branches(&vertices, &halfedges, &edges, &legs)?;
    Ok((q, class_of))
}
