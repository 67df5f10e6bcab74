//! Catalogs of stable graphs of type `(g, n)` and the degeneration relation
//! between them.
//!
//! Generation starts from the smooth graph (one vertex of genus `g` carrying
//! all `n` legs) and applies the two inverse edge contractions, splitting a
//! vertex along a new edge and trading one unit of vertex genus for a loop,
//! one edge count at a time. Since contracting any edge of a stable graph
//! gives a stable graph, every stable graph is reached.

mod contract;

use std::collections::HashMap;

use rayon::prelude::*;

pub use contract::{contract_edges, contract_edges_with_map};

use crate::error::EnumerateError;
use crate::graph::{CanonicalKey, DualGraph};

/// Default cap on `3g − 3 + n`, the number of edges of a maximally
/// degenerate graph.
pub const DEFAULT_BOUND: u32 = 8;

/// Stable graphs of type `(g, n)` up to isomorphism, stored as canonical
/// representatives sorted by canonical key.
#[derive(Clone, Debug)]
pub struct GraphCatalog {
    genus: u32,
    markings: u32,
    graphs: Vec<DualGraph>,
    keys: Vec<CanonicalKey>,
    index: HashMap<CanonicalKey, usize>,
}

impl GraphCatalog {
    /// Catalog from arbitrary graphs; duplicates up to isomorphism collapse.
    pub fn from_graphs(
        genus: u32,
        markings: u32,
        graphs: impl IntoIterator<Item = DualGraph>,
    ) -> Result<Self, EnumerateError> {
        check_type(genus, markings, u32::MAX)?;
        let mut by_key: HashMap<CanonicalKey, DualGraph> = HashMap::new();
        for g in graphs {
            let (key, rep) = g.canonical_representative();
            by_key.entry(key).or_insert(rep);
        }
        Ok(Self::from_map(genus, markings, by_key))
    }

    fn from_map(genus: u32, markings: u32, by_key: HashMap<CanonicalKey, DualGraph>) -> Self {
        let mut entries: Vec<(CanonicalKey, DualGraph)> = by_key.into_iter().collect();
        entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let (keys, graphs): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Self { genus, markings, graphs, keys, index }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn markings(&self) -> u32 {
        self.markings
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[DualGraph] {
        &self.graphs
    }

    pub fn graph(&self, i: usize) -> &DualGraph {
        &self.graphs[i]
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> &CanonicalKey {
        &self.keys[i]
    }

    pub fn position(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Catalog index of `g` and the catalog vertex each vertex of `g` maps to.
    pub fn locate(&self, g: &DualGraph) -> Option<(usize, Vec<usize>)> {
        let (key, position) = g.canonical_labeling();
        self.position(&key).map(|i| (i, position))
    }
}

/// Checks `2g − 2 + n > 0` and `3g − 3 + n ≤ bound`.
pub fn check_type(genus: u32, markings: u32, bound: u32) -> Result<(), EnumerateError> {
    if 2 * genus as i64 - 2 + markings as i64 <= 0 {
        return Err(EnumerateError::Unstable { genus, markings });
    }
    let required = (3 * genus as i64 - 3 + markings as i64) as u32;
    if required > bound {
        return Err(EnumerateError::BoundExceeded { required, bound });
    }
    Ok(())
}

pub fn enumerate_stable_graphs(genus: u32, markings: u32) -> Result<GraphCatalog, EnumerateError> {
    enumerate_stable_graphs_with_bound(genus, markings, DEFAULT_BOUND)
}

pub fn enumerate_stable_graphs_with_bound(
    genus: u32,
    markings: u32,
    bound: u32,
) -> Result<GraphCatalog, EnumerateError> {
    check_type(genus, markings, bound)?;
    let legs: Vec<(u32, usize)> = (1..=markings).map(|l| (l, 0)).collect();
    let smooth = DualGraph::build(&[genus], &[], &legs)?;
    let (key, rep) = smooth.canonical_representative();
    let mut all: HashMap<CanonicalKey, DualGraph> = HashMap::new();
    let mut level: Vec<DualGraph> = vec![rep.clone()];
    all.insert(key, rep);
    while !level.is_empty() {
        let children: Vec<DualGraph> = level.par_iter().flat_map_iter(one_edge_more).collect();
        let mut next = Vec::new();
        for child in children {
            let (key, position) = child.canonical_labeling();
            if let std::collections::hash_map::Entry::Vacant(slot) = all.entry(key) {
                let rep = child.relabeled(&position);
                next.push(rep.clone());
                slot.insert(rep);
            }
        }
        level = next;
    }
    Ok(GraphCatalog::from_map(genus, markings, all))
}

/// Dense description of a graph used while generating.
#[derive(Clone, Debug)]
struct Shape {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
    legs: Vec<(u32, usize)>,
}

impl Shape {
    fn of(g: &DualGraph) -> Self {
        Shape {
            genera: g.genera().to_vec(),
            edges: (0..g.num_edges()).map(|e| g.edge_endpoints(e)).collect(),
            legs: g.legs().into_iter().map(|(l, h)| (l, g.halfedge_vertex(h))).collect(),
        }
    }

    fn build(&self) -> DualGraph {
        DualGraph::build(&self.genera, &self.edges, &self.legs).expect("generated graphs are well formed")
    }
}

/// An incidence at a vertex: an edge end (edge index, which end) or a leg.
#[derive(Clone, Copy, Debug)]
enum Incidence {
    EdgeEnd(usize, bool),
    Leg(usize),
}

/// Every graph obtained from `g` by one inverse contraction that stays
/// stable. Duplicates are left to the caller.
fn one_edge_more(g: &DualGraph) -> Vec<DualGraph> {
    let shape = Shape::of(g);
    let mut out = Vec::new();
    for v in 0..shape.genera.len() {
        let h = shape.genera[v];
        if h >= 1 {
            let mut s = shape.clone();
            s.genera[v] -= 1;
            s.edges.push((v, v));
            out.push(s.build());
        }
        let mut items = Vec::new();
        for (e, &(a, b)) in shape.edges.iter().enumerate() {
            if a == v {
                items.push(Incidence::EdgeEnd(e, false));
            }
            if b == v {
                items.push(Incidence::EdgeEnd(e, true));
            }
        }
        for (i, &(_, w)) in shape.legs.iter().enumerate() {
            if w == v {
                items.push(Incidence::Leg(i));
            }
        }
        let k = items.len();
        if k == 0 {
            // lone vertex without legs: only genus can be split
            for h1 in 1..h {
                let h2 = h - h1;
                if h1 <= h2 {
                    let mut s = shape.clone();
                    s.genera[v] = h1;
                    s.genera.push(h2);
                    s.edges.push((v, s.genera.len() - 1));
                    out.push(s.build());
                }
            }
            continue;
        }
        // the first incidence always stays on `v`, so each unordered split is seen once
        for mask in 0u64..(1u64 << (k - 1)) {
            let moved = mask.count_ones() as usize;
            let stay = k - moved;
            for h1 in 0..=h {
                let h2 = h - h1;
                if 2 * h1 as i64 - 1 + stay as i64 <= 0 || 2 * h2 as i64 - 1 + moved as i64 <= 0 {
                    continue;
                }
                let mut s = shape.clone();
                let w = s.genera.len();
                s.genera[v] = h1;
                s.genera.push(h2);
                for (i, item) in items.iter().enumerate().skip(1) {
                    if mask >> (i - 1) & 1 == 1 {
                        match *item {
                            Incidence::EdgeEnd(e, false) => s.edges[e].0 = w,
                            Incidence::EdgeEnd(e, true) => s.edges[e].1 = w,
                            Incidence::Leg(l) => s.legs[l].1 = w,
                        }
                    }
                }
                s.edges.push((v, w));
                out.push(s.build());
            }
        }
    }
    out
}

/// A degeneration `source ⤳ target` witnessed by contracting `contracted`
/// (edge indices of the target representative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneration {
    pub source: usize,
    pub target: usize,
    pub contracted: Vec<usize>,
    /// For each vertex `v` of the source representative, the sorted target
    /// vertices that contract onto it (the subgraph `M_v`).
    pub vertex_map: Vec<Vec<usize>>,
}

/// All degenerations landing in catalog entry `target`, one per edge subset
/// of the target, identity included.
pub fn degenerations_into(catalog: &GraphCatalog, target: usize) -> Vec<Degeneration> {
    let mut out = Vec::new();
    for_each_degeneration_into(catalog, target, |d| out.push(d.to_owned()));
    out
}

/// Borrowed view of a [`Degeneration`], handed out by
/// [`for_each_degeneration_into`] without allocating per record.
#[derive(Clone, Copy, Debug)]
pub struct DegenerationRef<'a> {
    pub source: usize,
    pub target: usize,
    /// Bit `e` set iff edge `e` of the target is contracted.
    pub mask: u64,
    /// Source vertex each target vertex contracts onto.
    pub vertex_of: &'a [usize],
}

impl DegenerationRef<'_> {
    pub fn contracted(&self) -> Vec<usize> {
        (0..64).filter(|&e| self.mask >> e & 1 == 1).collect()
    }

    pub fn to_owned(&self) -> Degeneration {
        let k = self.vertex_of.iter().max().map_or(0, |&m| m + 1);
        let mut vertex_map = vec![Vec::new(); k];
        for (w, &v) in self.vertex_of.iter().enumerate() {
            vertex_map[v].push(w);
        }
        Degeneration { source: self.source, target: self.target, contracted: self.contracted(), vertex_map }
    }
}

/// Streams the degenerations into `target` in increasing mask order.
pub fn for_each_degeneration_into(catalog: &GraphCatalog, target: usize, mut f: impl FnMut(DegenerationRef<'_>)) {
    let rep = catalog.graph(target);
    let e = rep.num_edges();
    assert!(e < 64, "edge subsets are indexed by u64 masks");
    let mut vertex_of = Vec::with_capacity(rep.num_vertices());
    for mask in 0u64..(1u64 << e) {
        let (key, position, class_of) = rep.contracted_labeling(mask);
        let source = catalog.position(&key).expect("contractions of stable graphs of type (g, n) are in the catalog");
        vertex_of.clear();
        vertex_of.extend(class_of.iter().map(|&c| position[c]));
        f(DegenerationRef { source, target, mask, vertex_of: &vertex_of });
    }
}

/// Every degeneration between catalog entries, grouped by target.
pub fn degenerations_between(catalog: &GraphCatalog) -> Vec<Degeneration> {
    (0..catalog.len()).into_par_iter().flat_map_iter(|t| degenerations_into(catalog, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_stable_graphs(0, 3).unwrap().len(), 1);
        assert_eq!(enumerate_stable_graphs(1, 1).unwrap().len(), 2);
        assert_eq!(enumerate_stable_graphs(0, 4).unwrap().len(), 4);
    }

    #[test]
    fn type_errors() {
        assert_eq!(enumerate_stable_graphs(1, 0).unwrap_err(), EnumerateError::Unstable { genus: 1, markings: 0 });
        assert_eq!(
            enumerate_stable_graphs_with_bound(3, 1, 6).unwrap_err(),
            EnumerateError::BoundExceeded { required: 7, bound: 6 }
        );
    }

    #[test]
    fn catalog_entries_are_stable_of_type() {
        let cat = enumerate_stable_graphs(2, 1).unwrap();
        for g in cat.graphs() {
            assert!(g.is_stable());
            assert_eq!(g.genus(), 2);
            assert_eq!(g.legs().iter().map(|&(l, _)| l).collect::<Vec<_>>(), vec![1]);
        }
    }

    #[test]
    fn genus_one_loop_degeneration() {
        let cat = enumerate_stable_graphs(1, 1).unwrap();
        let smooth = cat.locate(&DualGraph::build(&[1], &[], &[(1, 0)]).unwrap()).unwrap().0;
        let nodal = cat.locate(&DualGraph::build(&[0], &[(0, 0)], &[(1, 0)]).unwrap()).unwrap().0;
        let degs = degenerations_between(&cat);
        let non_identity: Vec<_> = degs.iter().filter(|d| !d.contracted.is_empty()).collect();
        assert_eq!(non_identity.len(), 1);
        let d = non_identity[0];
        assert_eq!((d.source, d.target), (smooth, nodal));
        assert_eq!(d.vertex_map, vec![vec![0]]);
        // the loop vertex is the whole of M_v and carries genus 1 with its loop
        let m_v = cat.graph(nodal).induced_subgraph(&d.vertex_map[0]).unwrap();
        assert_eq!(m_v.genus(), 1);
        assert_eq!(degs.iter().filter(|d| d.contracted.is_empty()).count(), 2);
    }

    #[test]
    fn fast_quotient_labeling_matches_contraction() {
        let cat = enumerate_stable_graphs(1, 3).unwrap();
        for g in cat.graphs() {
            for mask in 0u64..(1 << g.num_edges()) {
                let subset: Vec<usize> = (0..g.num_edges()).filter(|&e| mask >> e & 1 == 1).collect();
                let (q, map) = contract_edges_with_map(g, &subset).unwrap();
                let (key, position) = q.canonical_labeling();
                let (fast_key, fast_position, class_of) = g.contracted_labeling(mask);
                assert_eq!(key, fast_key);
                assert_eq!(map, class_of);
                assert_eq!(position, fast_position);
            }
        }
    }

    #[test]
    fn degenerations_round_trip() {
        let cat = enumerate_stable_graphs(2, 0).unwrap();
        for d in degenerations_between(&cat) {
            let q = contract_edges(cat.graph(d.target), &d.contracted).unwrap();
            assert_eq!(&q.canonical_form(), cat.key(d.source));
        }
    }
}
