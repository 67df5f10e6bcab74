//! Polystable reduction, C1-sets and Torelli class keys.
//!
//! Markings are forgotten first. [`pst`] cuts every separating edge,
//! stabilizes each piece and keeps the pieces of positive genus. Two graphs
//! have the same [`TorelliKey`] exactly when their polystable reductions
//! are C1-equivalent.

mod c1;
mod fiber_check;
mod stabilize;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use c1::{c1_equivalent, c1_sets, C1Partition, C1Witness};
pub use fiber_check::{fiber_constant, FiberCheck, FiberVerdict, VariesReason};
pub use stabilize::{stabilize, stabilize_with};

use crate::enumerate::GraphCatalog;
use crate::error::TorelliError;
use crate::graph::{canonical_labeling, CanonicalKey, ColoredMultigraph, DualGraph};

/// Disjoint union of connected, leg-free, bridgeless graphs whose genus-0
/// vertices have valence at least 3, except in one-vertex components.
/// Components are sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolystableGraph {
    components: Vec<DualGraph>,
}

impl PolystableGraph {
    pub fn new(mut components: Vec<DualGraph>) -> Result<Self, TorelliError> {
        for (i, c) in components.iter().enumerate() {
            check_component(c).map_err(|why| TorelliError::NotPolystable(format!("component {i}: {why}")))?;
        }
        components.sort_by_cached_key(DualGraph::canonical_form);
        Ok(PolystableGraph { components })
    }

    pub fn components(&self) -> &[DualGraph] {
        &self.components
    }

    pub fn genus(&self) -> u32 {
        self.components.iter().map(DualGraph::genus).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// One graph holding every component, `None` when there are none;
    /// vertex `i` is the `i`-th vertex in component order and edges keep
    /// their order.
    pub fn union(&self) -> Option<DualGraph> {
        if self.components.is_empty() {
            return None;
        }
        let mut genera = Vec::new();
        let mut edges = Vec::new();
        for c in &self.components {
            let off = genera.len();
            genera.extend_from_slice(c.genera());
            edges.extend((0..c.num_edges()).map(|e| {
                let (u, v) = c.edge_endpoints(e);
                (u + off, v + off)
            }));
        }
        Some(DualGraph::build(&genera, &edges, &[]).expect("union of valid components"))
    }

    /// Per component: some vertex has `3g - 3 + val > 0`.
    pub fn moduli_flags(&self) -> Vec<bool> {
        self.components.iter().map(moduli_positive).collect()
    }
}

fn check_component(c: &DualGraph) -> Result<(), String> {
    if !c.is_connected() {
        return Err("disconnected".into());
    }
    if c.num_halfedges() != 2 * c.num_edges() {
        return Err("has legs or branch points".into());
    }
    if let Some(&e) = c.separating_edges().first() {
        return Err(format!("edge {e} is separating"));
    }
    if c.num_vertices() > 1 {
        if let Some(v) = (0..c.num_vertices()).find(|&v| c.vertex_genus(v) == 0 && c.valence(v) < 3) {
            return Err(format!("genus-0 vertex {v} has valence {}", c.valence(v)));
        }
    }
    Ok(())
}

fn moduli_positive(c: &DualGraph) -> bool {
    (0..c.num_vertices()).any(|v| 3 * c.vertex_genus(v) as i64 - 3 + c.valence(v) as i64 > 0)
}

/// Polystable reduction: legs dropped, separating edges cut, each piece
/// stabilized, genus-0 pieces removed. Vertex ids survive.
pub fn pst(g: &DualGraph) -> PolystableGraph {
    let base = g.without_legs();
    let pieces = base.normalize_at(&base.separating_edges()).expect("separating edges are edges");
    let components = pieces.iter().map(|p| stabilize(&p.graph)).filter(|c| c.genus() > 0).collect();
    PolystableGraph::new(components).expect("stabilized pieces are polystable")
}

/// Fingerprint of a Torelli class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorelliKey(CanonicalKey);

impl TorelliKey {
    pub fn as_canonical(&self) -> &CanonicalKey {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.to_hex()
    }
}

impl fmt::Display for TorelliKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for TorelliKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorelliKey({})", self.0)
    }
}

/// Key of a polystable graph: canonical form of the bipartite multigraph
/// joining each vertex to each C1-set, with one edge per half-edge of the
/// vertex on the set. Vertices are colored by genus and the moduli flag of
/// their component, sets by size.
pub fn polystable_key(p: &PolystableGraph) -> Result<TorelliKey, TorelliError> {
    let flat = c1::Flat::of(p)?;
    let n = flat.graph.num_vertices();
    let flags = p.moduli_flags();
    let mut colors = Vec::with_capacity(n + flat.blocks.len());
    for (ci, c) in p.components().iter().enumerate() {
        for v in 0..c.num_vertices() {
            colors.push(vec![0, c.vertex_genus(v), flags[ci] as u32]);
        }
    }
    colors.extend(flat.blocks.iter().map(|b| vec![1, b.len() as u32]));
    let mut bip = ColoredMultigraph::new(colors);
    for (v, row) in flat.counts().iter().enumerate() {
        for (b, &k) in row.iter().enumerate() {
            if k > 0 {
                bip.add_edges(v, n + b, k as u32);
            }
        }
    }
    Ok(TorelliKey(canonical_labeling(&bip).key))
}

/// Torelli key of a stable graph of positive genus.
pub fn torelli_key(g: &DualGraph) -> Result<TorelliKey, TorelliError> {
    if g.genus() == 0 {
        return Err(TorelliError::GenusZero);
    }
    polystable_key(&pst(g))
}

/// Catalog members sharing one Torelli key, by catalog index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorelliClass {
    pub key: TorelliKey,
    pub members: Vec<usize>,
}

/// Partition of a catalog into Torelli classes, ordered by first member.
pub fn torelli_classes(catalog: &GraphCatalog) -> Result<Vec<TorelliClass>, TorelliError> {
    if catalog.genus() == 0 {
        return Err(TorelliError::GenusZero);
    }
    let keys: Vec<TorelliKey> = catalog.graphs().par_iter().map(torelli_key).collect::<Result<_, _>>()?;
    let mut classes: Vec<TorelliClass> = Vec::new();
    let mut index: std::collections::HashMap<TorelliKey, usize> = std::collections::HashMap::new();
    for (i, k) in keys.into_iter().enumerate() {
        match index.get(&k) {
            Some(&c) => classes[c].members.push(i),
            None => {
                index.insert(k.clone(), classes.len());
                classes.push(TorelliClass { key: k, members: vec![i] });
            }
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_stable_graphs;

    fn three_tails_on(center: &[u32], center_edges: &[(usize, usize)]) -> DualGraph {
        // genus-1 vertices 0..2 attached to the rational tree on vertices 3..
        let mut genera = vec![1, 1, 1];
        genera.extend_from_slice(center);
        let mut edges: Vec<(usize, usize)> = center_edges.iter().map(|&(a, b)| (a + 3, b + 3)).collect();
        let last = 3 + center.len() - 1;
        edges.extend([(0, 3), (1, 3), (2, last)]);
        DualGraph::build(&genera, &edges, &[]).unwrap()
    }

    #[test]
    fn three_tails_reduce_to_three_points() {
        let g = three_tails_on(&[0], &[]);
        let p = pst(&g);
        assert_eq!(p.components().len(), 3);
        assert!(p.components().iter().all(|c| c.num_vertices() == 1 && c.vertex_genus(0) == 1));
        let h = DualGraph::build(&[1, 1, 1, 0, 0, 0], &[(3, 4), (4, 5), (0, 3), (1, 4), (2, 5)], &[]).unwrap();
        // h is unstable in the middle but pst does not care
        assert_eq!(torelli_key(&g).unwrap(), torelli_key(&h).unwrap());
    }

    #[test]
    fn parallel_pair_is_not_a_chain() {
        let banana = DualGraph::build(&[1, 1], &[(0, 1), (0, 1)], &[]).unwrap();
        let chain = DualGraph::build(&[1, 1], &[(0, 1)], &[]).unwrap();
        assert_eq!(pst(&banana).components().len(), 1);
        assert_eq!(c1_sets(&pst(&banana).components()[0]).unwrap().blocks, vec![vec![0, 1]]);
        assert_eq!(pst(&chain).components().len(), 2);
        assert_ne!(torelli_key(&banana).unwrap(), torelli_key(&chain).unwrap());
    }

    #[test]
    fn inserted_bridge_keeps_the_key() {
        let g = DualGraph::build(&[1, 0], &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        let refined = DualGraph::build(&[1, 0, 0], &[(0, 1), (0, 1), (0, 2), (2, 1)], &[]).unwrap();
        assert_eq!(torelli_key(&g).unwrap(), torelli_key(&refined).unwrap());
    }

    #[test]
    fn four_parallel_edges_are_fixed() {
        let g = DualGraph::build(&[1, 0], &[(0, 1); 4], &[]).unwrap();
        let p = pst(&g);
        assert_eq!(p.components().len(), 1);
        assert_eq!(p.components()[0].canonical_form(), g.canonical_form());
    }

    #[test]
    fn genus_zero_has_no_key() {
        let g = DualGraph::build(&[0], &[], &[(1, 0), (2, 0), (3, 0)]).unwrap();
        assert_eq!(torelli_key(&g).unwrap_err(), TorelliError::GenusZero);
    }

    #[test]
    fn genus_one_classes() {
        let cat = enumerate_stable_graphs(1, 1).unwrap();
        let classes = torelli_classes(&cat).unwrap();
        assert_eq!(classes.len(), 2);
        let cat = enumerate_stable_graphs(2, 0).unwrap();
        let classes = torelli_classes(&cat).unwrap();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, cat.len());
    }

    #[test]
    fn pst_is_idempotent_on_genus_two() {
        for g in enumerate_stable_graphs(2, 1).unwrap().graphs() {
            let p = pst(g);
            let again = pst(&p.union().unwrap());
            assert_eq!(polystable_key(&p).unwrap(), polystable_key(&again).unwrap());
            assert_eq!(p.genus(), again.genus());
        }
    }
}
