//! Genus-decorated half-edge multigraphs.
//!
//! A [`DualGraph`] stores vertices with a genus, half-edges attached to
//! vertices, an involution pairing half-edges into edges, and marking labels
//! on unpaired half-edges. A half-edge that is neither paired nor labeled is a
//! *branch point*: it only appears in graphs produced by [`DualGraph::normalize_at`]
//! and remembers where an edge was cut.
//!
//! All indices handed out by accessors are dense (`0..num_vertices()`,
//! `0..num_halfedges()`, `0..num_edges()`). The external ids of vertices and
//! half-edges survive every operation that keeps the element, which is how
//! provenance is tracked through normalization, contraction and stabilization.

mod canon;
mod connectivity;
pub mod io;

use std::collections::BTreeMap;

pub(crate) use canon::{canonical_labeling, vertex_automorphisms, ColoredMultigraph};
pub use canon::{Automorphisms, CanonicalKey};

use crate::error::GraphError;

/// Largest accepted vertex genus.
pub const MAX_GENUS: u32 = 1 << 16;

/// A genus-decorated multigraph with legs, loops and parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    genus: Vec<u32>,
    vertex_ids: Vec<u32>,
    he_vertex: Vec<usize>,
    he_ids: Vec<u32>,
    he_edge: Vec<Option<usize>>,
    he_leg: Vec<Option<u32>>,
    edges: Vec<[usize; 2]>,
}

/// A cut point left behind by [`DualGraph::normalize_at`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    /// Half-edge index inside the piece.
    pub halfedge: usize,
    /// Edge index of the host graph that was cut.
    pub host_edge: usize,
}

/// One connected component of a normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub graph: DualGraph,
    /// Host vertex index of every piece vertex.
    pub host_vertices: Vec<usize>,
    pub branch_points: Vec<BranchPoint>,
}

impl DualGraph {
    /// Builds a graph from dense data: vertex `i` has genus `genera[i]`,
    /// each `(u, v)` in `edges` is an edge (a loop when `u == v`) and each
    /// `(label, v)` in `legs` puts marking `label` on vertex `v`.
    ///
    /// Vertex ids are `0..`, half-edges are created edge by edge and then
    /// leg by leg, with ids equal to their index.
    pub fn build(genera: &[u32], edges: &[(usize, usize)], legs: &[(u32, usize)]) -> Result<Self, GraphError> {
        let n = genera.len();
        let mut he_vertex = Vec::with_capacity(2 * edges.len() + legs.len());
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange(x));
                }
            }
            let h = he_vertex.len();
            he_vertex.push(u);
            he_vertex.push(v);
            pairs.push([h, h + 1]);
        }
        let mut he_leg = vec![None; he_vertex.len()];
        for &(label, v) in legs {
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            he_vertex.push(v);
            he_leg.push(Some(label));
        }
        let ids = (0..n as u32).collect();
        let he_ids = (0..he_vertex.len() as u32).collect();
        Self::assemble(genera.to_vec(), ids, he_vertex, he_ids, pairs, he_leg, false)
    }

    /// Builds a graph from id-based parts, as found in the JSON format.
    ///
    /// Every half-edge must be paired by `edges` or labeled by `legs`.
    pub fn from_parts(
        vertices: &[(u32, u32)],
        halfedges: &[(u32, u32)],
        edges: &[(u32, u32)],
        legs: &[(u32, u32)],
    ) -> Result<Self, GraphError> {
        Self::from_parts_inner(vertices, halfedges, edges, legs, false)
    }

    /// Like [`DualGraph::from_parts`] but unpaired unlabeled half-edges are
    /// accepted as branch points.
    pub fn from_parts_with_branches(
        vertices: &[(u32, u32)],
        halfedges: &[(u32, u32)],
        edges: &[(u32, u32)],
        legs: &[(u32, u32)],
    ) -> Result<Self, GraphError> {
        Self::from_parts_inner(vertices, halfedges, edges, legs, true)
    }

    fn from_parts_inner(
        vertices: &[(u32, u32)],
        halfedges: &[(u32, u32)],
        edges: &[(u32, u32)],
        legs: &[(u32, u32)],
        allow_branches: bool,
    ) -> Result<Self, GraphError> {
        let mut vindex = BTreeMap::new();
        for (i, &(id, _)) in vertices.iter().enumerate() {
            if vindex.insert(id, i).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
        }
        let mut hindex = BTreeMap::new();
        let mut he_vertex = Vec::with_capacity(halfedges.len());
        for (i, &(hid, vid)) in halfedges.iter().enumerate() {
            if hindex.insert(hid, i).is_some() {
                return Err(GraphError::DuplicateHalfedge(hid));
            }
            let v = *vindex.get(&vid).ok_or(GraphError::UnknownVertex { halfedge: hid, vertex: vid })?;
            he_vertex.push(v);
        }
        let lookup = |hid: u32| hindex.get(&hid).copied().ok_or(GraphError::UnknownHalfedge(hid));
        let mut used = vec![false; halfedges.len()];
        let mut claim = |h: usize| {
            if std::mem::replace(&mut used[h], true) {
                Err(GraphError::BrokenInvolution(halfedges[h].0))
            } else {
                Ok(())
            }
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfPaired(a));
            }
            let (ha, hb) = (lookup(a)?, lookup(b)?);
            claim(ha)?;
            claim(hb)?;
            pairs.push([ha, hb]);
        }
        let mut he_leg = vec![None; halfedges.len()];
        for &(label, hid) in legs {
            let h = lookup(hid)?;
            claim(h)?;
            he_leg[h] = Some(label);
        }
        let genus = vertices.iter().map(|&(_, g)| g).collect();
        let ids = vertices.iter().map(|&(id, _)| id).collect();
        let he_ids = halfedges.iter().map(|&(id, _)| id).collect();
        Self::assemble(genus, ids, he_vertex, he_ids, pairs, he_leg, allow_branches)
    }

    fn assemble(
        genus: Vec<u32>,
        vertex_ids: Vec<u32>,
        he_vertex: Vec<usize>,
        he_ids: Vec<u32>,
        edges: Vec<[usize; 2]>,
        he_leg: Vec<Option<u32>>,
        allow_branches: bool,
    ) -> Result<Self, GraphError> {
        if genus.is_empty() {
            return Err(GraphError::Empty);
        }
        for (v, &g) in genus.iter().enumerate() {
            if g > MAX_GENUS {
                return Err(GraphError::GenusTooLarge { vertex: vertex_ids[v], genus: g, max: MAX_GENUS });
            }
        }
        let mut he_edge = vec![None; he_vertex.len()];
        for (e, &[a, b]) in edges.iter().enumerate() {
            he_edge[a] = Some(e);
            he_edge[b] = Some(e);
        }
        let mut labels = BTreeMap::new();
        for (h, leg) in he_leg.iter().enumerate() {
            if let Some(label) = *leg {
                if label == 0 {
                    return Err(GraphError::InvalidLegLabel(label));
                }
                if labels.insert(label, h).is_some() {
                    return Err(GraphError::DuplicateLeg(label));
                }
            } else if he_edge[h].is_none() && !allow_branches {
                return Err(GraphError::DanglingHalfedge(he_ids[h]));
            }
        }
        Ok(Self { genus, vertex_ids, he_vertex, he_ids, he_edge, he_leg, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.genus.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_halfedges(&self) -> usize {
        self.he_vertex.len()
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.genus[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genus
    }

    pub fn vertex_id(&self, v: usize) -> u32 {
        self.vertex_ids[v]
    }

    pub fn vertex_ids(&self) -> &[u32] {
        &self.vertex_ids
    }

    /// Dense index of the vertex with external id `id`.
    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertex_ids.iter().position(|&x| x == id)
    }

    pub fn halfedge_vertex(&self, h: usize) -> usize {
        self.he_vertex[h]
    }

    pub fn halfedge_id(&self, h: usize) -> u32 {
        self.he_ids[h]
    }

    pub fn halfedge_leg(&self, h: usize) -> Option<u32> {
        self.he_leg[h]
    }

    pub fn halfedge_edge(&self, h: usize) -> Option<usize> {
        self.he_edge[h]
    }

    /// The other half of the edge through `h`.
    pub fn partner(&self, h: usize) -> Option<usize> {
        self.he_edge[h].map(|e| {
            let [a, b] = self.edges[e];
            if a == h {
                b
            } else {
                a
            }
        })
    }

    pub fn is_branch_point(&self, h: usize) -> bool {
        self.he_edge[h].is_none() && self.he_leg[h].is_none()
    }

    /// Half-edge pair of edge `e`.
    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.edges[e];
        (self.he_vertex[a], self.he_vertex[b])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edge_endpoints(e);
        u == v
    }

    /// `(label, halfedge)` for every leg, sorted by label.
    pub fn legs(&self) -> Vec<(u32, usize)> {
        let mut legs: Vec<_> = self.he_leg.iter().enumerate().filter_map(|(h, l)| l.map(|l| (l, h))).collect();
        legs.sort_unstable();
        legs
    }

    pub fn num_legs(&self) -> usize {
        self.he_leg.iter().filter(|l| l.is_some()).count()
    }

    /// Vertex carrying marking `label`.
    pub fn leg_vertex(&self, label: u32) -> Option<usize> {
        self.he_leg.iter().position(|&l| l == Some(label)).map(|h| self.he_vertex[h])
    }

    /// Sorted marking labels at `v`.
    pub fn legs_at(&self, v: usize) -> Vec<u32> {
        let mut out: Vec<u32> =
            (0..self.num_halfedges()).filter(|&h| self.he_vertex[h] == v).filter_map(|h| self.he_leg[h]).collect();
        out.sort_unstable();
        out
    }

    pub fn branch_points(&self) -> Vec<usize> {
        (0..self.num_halfedges()).filter(|&h| self.is_branch_point(h)).collect()
    }

    pub fn halfedges_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_halfedges()).filter(|&h| self.he_vertex[h] == v).collect()
    }

    /// Number of half-edges at `v`; loops count twice, legs and branch points once.
    pub fn valence(&self, v: usize) -> usize {
        self.he_vertex.iter().filter(|&&x| x == v).count()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.num_vertices()];
        for &v in &self.he_vertex {
            val[v] += 1;
        }
        val
    }

    /// Edge indices incident to `v` (a loop is listed once).
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_edges())
            .filter(|&e| {
                let (a, b) = self.edge_endpoints(e);
                a == v || b == v
            })
            .collect()
    }

    /// Number of edges joining `u` and `v` (loops at `u` when equal).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        (0..self.num_edges())
            .filter(|&e| {
                let (a, b) = self.edge_endpoints(e);
                (a, b) == (u, v) || (a, b) == (v, u)
            })
            .count()
    }

    /// Arithmetic genus: sum of vertex genera plus the first Betti number.
    ///
    /// For a connected graph this is `Σ g_v + #E − #V + 1`; for a disjoint
    /// union it is the sum over components.
    pub fn genus(&self) -> u32 {
        let vg: u64 = self.genus.iter().map(|&g| g as u64).sum();
        (vg + self.first_betti() as u64) as u32
    }

    /// `#E − #V + #components`.
    pub fn first_betti(&self) -> usize {
        self.num_edges() + self.components().len() - self.num_vertices()
    }

    /// Whether `2g_v − 2 + val(v) > 0` for every vertex and the graph is connected.
    pub fn is_stable(&self) -> bool {
        self.is_connected() && self.unstable_vertices().is_empty()
    }

    pub fn unstable_vertices(&self) -> Vec<usize> {
        let val = self.valences();
        (0..self.num_vertices()).filter(|&v| 2 * self.genus[v] as i64 - 2 + val[v] as i64 <= 0).collect()
    }

    /// Graph with every leg half-edge removed; edges and branch points stay.
    pub fn without_legs(&self) -> DualGraph {
        let keep: Vec<usize> = (0..self.num_halfedges()).filter(|&h| self.he_leg[h].is_none()).collect();
        self.restrict_halfedges(&keep)
    }

    /// Graph with every unpaired half-edge (legs and branch points) removed.
    pub fn bare(&self) -> DualGraph {
        let keep: Vec<usize> = (0..self.num_halfedges()).filter(|&h| self.he_edge[h].is_some()).collect();
        self.restrict_halfedges(&keep)
    }

    fn restrict_halfedges(&self, keep: &[usize]) -> DualGraph {
        let mut new_of = vec![usize::MAX; self.num_halfedges()];
        for (i, &h) in keep.iter().enumerate() {
            new_of[h] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|[a, b]| new_of[*a] != usize::MAX && new_of[*b] != usize::MAX)
            .map(|&[a, b]| [new_of[a], new_of[b]])
            .collect();
        DualGraph::assemble(
            self.genus.clone(),
            self.vertex_ids.clone(),
            keep.iter().map(|&h| self.he_vertex[h]).collect(),
            keep.iter().map(|&h| self.he_ids[h]).collect(),
            edges,
            keep.iter().map(|&h| self.he_leg[h]).collect(),
            true,
        )
        .expect("restriction of a valid graph")
    }

    /// The complete subgraph on `vertices` (sorted, deduplicated). Edges
    /// leaving the subset become branch points; legs stay.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<DualGraph, GraphError> {
        let mut inside = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.num_vertices() {
                return Err(GraphError::VertexOutOfRange(v));
            }
            inside[v] = i;
        }
        let keep: Vec<usize> = (0..self.num_halfedges()).filter(|&h| inside[self.he_vertex[h]] != usize::MAX).collect();
        let mut new_of = vec![usize::MAX; self.num_halfedges()];
        for (i, &h) in keep.iter().enumerate() {
            new_of[h] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|[a, b]| new_of[*a] != usize::MAX && new_of[*b] != usize::MAX)
            .map(|&[a, b]| [new_of[a], new_of[b]])
            .collect();
        DualGraph::assemble(
            vertices.iter().map(|&v| self.genus[v]).collect(),
            vertices.iter().map(|&v| self.vertex_ids[v]).collect(),
            keep.iter().map(|&h| inside[self.he_vertex[h]]).collect(),
            keep.iter().map(|&h| self.he_ids[h]).collect(),
            edges,
            keep.iter().map(|&h| self.he_leg[h]).collect(),
            true,
        )
    }

    /// Cuts every edge in `cut`, leaving its two half-edges behind as branch
    /// points, and returns the connected components of the result.
    pub fn normalize_at(&self, cut: &[usize]) -> Result<Vec<Piece>, GraphError> {
        let mut is_cut = vec![false; self.num_edges()];
        for &e in cut {
            if e >= self.num_edges() {
                return Err(GraphError::UnknownEdge(e));
            }
            is_cut[e] = true;
        }
        let kept: Vec<usize> = (0..self.num_edges()).filter(|&e| !is_cut[e]).collect();
        let comps = connectivity::components_with_edges(self, &kept);
        let mut pieces = Vec::with_capacity(comps.len());
        for verts in comps {
            let mut inside = vec![usize::MAX; self.num_vertices()];
            for (i, &v) in verts.iter().enumerate() {
                inside[v] = i;
            }
            let hs: Vec<usize> =
                (0..self.num_halfedges()).filter(|&h| inside[self.he_vertex[h]] != usize::MAX).collect();
            let mut new_of = vec![usize::MAX; self.num_halfedges()];
            for (i, &h) in hs.iter().enumerate() {
                new_of[h] = i;
            }
            let edges = kept
                .iter()
                .map(|&e| self.edges[e])
                .filter(|[a, _]| new_of[*a] != usize::MAX)
                .map(|[a, b]| [new_of[a], new_of[b]])
                .collect();
            let branch_points = hs
                .iter()
                .enumerate()
                .filter_map(|(i, &h)| match self.he_edge[h] {
                    Some(e) if is_cut[e] => Some(BranchPoint { halfedge: i, host_edge: e }),
                    _ => None,
                })
                .collect();
            let graph = DualGraph::assemble(
                verts.iter().map(|&v| self.genus[v]).collect(),
                verts.iter().map(|&v| self.vertex_ids[v]).collect(),
                hs.iter().map(|&h| inside[self.he_vertex[h]]).collect(),
                hs.iter().map(|&h| self.he_ids[h]).collect(),
                edges,
                hs.iter().map(|&h| self.he_leg[h]).collect(),
                true,
            )?;
            pieces.push(Piece { graph, host_vertices: verts, branch_points });
        }
        Ok(pieces)
    }

    /// Disjoint union; vertex and half-edge ids are kept as they are.
    pub fn disjoint_union(parts: &[DualGraph]) -> Result<DualGraph, GraphError> {
        let mut genus = Vec::new();
        let mut ids = Vec::new();
        let mut he_vertex = Vec::new();
        let mut he_ids = Vec::new();
        let mut he_leg = Vec::new();
        let mut edges = Vec::new();
        for p in parts {
            let (voff, hoff) = (genus.len(), he_vertex.len());
            genus.extend_from_slice(&p.genus);
            ids.extend_from_slice(&p.vertex_ids);
            he_vertex.extend(p.he_vertex.iter().map(|&v| v + voff));
            he_ids.extend_from_slice(&p.he_ids);
            he_leg.extend_from_slice(&p.he_leg);
            edges.extend(p.edges.iter().map(|&[a, b]| [a + hoff, b + hoff]));
        }
        DualGraph::assemble(genus, ids, he_vertex, he_ids, edges, he_leg, true)
    }

    /// Pairs up branch points that came from the same host edge.
    pub fn reglue(pieces: &[Piece]) -> Result<DualGraph, GraphError> {
        let parts: Vec<DualGraph> = pieces.iter().map(|p| p.graph.clone()).collect();
        let mut union = DualGraph::disjoint_union(&parts)?;
        let mut offset = 0;
        let mut open: BTreeMap<usize, usize> = BTreeMap::new();
        for p in pieces {
            for bp in &p.branch_points {
                let h = bp.halfedge + offset;
                if let Some(other) = open.remove(&bp.host_edge) {
                    let e = union.edges.len();
                    union.edges.push([other, h]);
                    union.he_edge[other] = Some(e);
                    union.he_edge[h] = Some(e);
                } else {
                    open.insert(bp.host_edge, h);
                }
            }
            offset += p.graph.num_halfedges();
        }
        Ok(union)
    }

    pub fn is_connected(&self) -> bool {
        connectivity::components(self).len() == 1
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        connectivity::components(self)
    }

    /// Non-loop edges whose removal disconnects their component.
    pub fn separating_edges(&self) -> Vec<usize> {
        connectivity::bridges(self)
    }

    /// Separating edges of the graph with edge `e` deleted, named by their
    /// indices in `self`.
    pub fn separating_edges_without(&self, e: usize) -> Vec<usize> {
        connectivity::bridges_skipping(self, Some(e))
    }

    /// Graph with edge `e` removed entirely (its half-edges are dropped).
    pub fn delete_edge(&self, e: usize) -> DualGraph {
        let [a, b] = self.edges[e];
        let keep: Vec<usize> = (0..self.num_halfedges()).filter(|&h| h != a && h != b).collect();
        self.restrict_halfedges(&keep)
    }

    /// Colored multigraph view used for canonical labeling. The color of a
    /// vertex is its genus, its number of branch points and its sorted legs,
    /// prefixed by `tag`.
    pub(crate) fn colored(&self, tag: &[u32]) -> ColoredMultigraph {
        let n = self.num_vertices();
        let mut branches = vec![0u32; n];
        let mut legs: Vec<Vec<u32>> = vec![Vec::new(); n];
        for h in 0..self.num_halfedges() {
            if self.he_edge[h].is_none() {
                match self.he_leg[h] {
                    Some(l) => legs[self.he_vertex[h]].push(l),
                    None => branches[self.he_vertex[h]] += 1,
                }
            }
        }
        let mut data = Vec::with_capacity(n * (tag.len() + 2) + self.num_halfedges());
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for v in 0..n {
            data.extend_from_slice(tag);
            data.push(self.genus[v]);
            data.push(branches[v]);
            legs[v].sort_unstable();
            data.extend_from_slice(&legs[v]);
            start.push(data.len());
        }
        let mut g = ColoredMultigraph::from_flat(data, start);
        for &[a, b] in &self.edges {
            g.add_edge(self.he_vertex[a], self.he_vertex[b]);
        }
        g
    }

    /// Canonical key and positions of the quotient by the edges in `mask`,
    /// together with the quotient map on vertices. Agrees with contracting
    /// and then calling [`DualGraph::canonical_labeling`], without building
    /// the quotient.
    pub(crate) fn contracted_labeling(&self, mask: u64) -> (CanonicalKey, Vec<usize>, Vec<usize>) {
        let n = self.num_vertices();
        let mut uf = UnionFind::new(n);
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                uf.union(self.he_vertex[a], self.he_vertex[b]);
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut k = 0;
        for v in 0..n {
            let r = uf.find(v);
            if class_of[r] == usize::MAX {
                class_of[r] = k;
                k += 1;
            }
            class_of[v] = class_of[r];
        }
        // genus of a class: Σ g_v + (#contracted edges inside) − (#vertices − 1)
        let mut genus = vec![1i64; k];
        for v in 0..n {
            genus[class_of[v]] += self.genus[v] as i64 - 1;
        }
        let mut branches = vec![0u32; k];
        let mut legs: Vec<Vec<u32>> = vec![Vec::new(); k];
        for h in 0..self.num_halfedges() {
            if self.he_edge[h].is_none() {
                match self.he_leg[h] {
                    Some(l) => legs[class_of[self.he_vertex[h]]].push(l),
                    None => branches[class_of[self.he_vertex[h]]] += 1,
                }
            }
        }
        let mut quotient_edges = Vec::with_capacity(self.edges.len());
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            let (u, v) = (class_of[self.he_vertex[a]], class_of[self.he_vertex[b]]);
            if mask >> e & 1 == 1 {
                genus[u] += 1;
            } else {
                quotient_edges.push((u, v));
            }
        }
        let mut data = Vec::with_capacity(2 * k + self.num_halfedges());
        let mut start = Vec::with_capacity(k + 1);
        start.push(0);
        for c in 0..k {
            data.push(genus[c] as u32);
            data.push(branches[c]);
            legs[c].sort_unstable();
            data.extend_from_slice(&legs[c]);
            start.push(data.len());
        }
        let mut g = ColoredMultigraph::from_flat(data, start);
        for (u, v) in quotient_edges {
            g.add_edge(u, v);
        }
        let l = canonical_labeling(&g);
        (l.key, l.position, class_of)
    }

    /// Canonical key: equal iff the graphs are isomorphic with legs fixed
    /// pointwise and genera preserved.
    pub fn canonical_form(&self) -> CanonicalKey {
        canonical_labeling(&self.colored(&[])).key
    }

    /// Canonical key together with the canonical position of every vertex.
    pub fn canonical_labeling(&self) -> (CanonicalKey, Vec<usize>) {
        let l = canonical_labeling(&self.colored(&[]));
        (l.key, l.position)
    }

    /// Copy with vertices reordered so that vertex `v` moves to `position[v]`.
    ///
    /// Vertex ids become the new indices and half-edges are regenerated in
    /// a fixed order (edges by sorted endpoints, then legs by label, then
    /// branch points by vertex), so isomorphic graphs relabeled by their
    /// canonical positions come out structurally equal.
    pub fn relabeled(&self, position: &[usize]) -> DualGraph {
        let n = self.num_vertices();
        let mut genera = vec![0; n];
        for v in 0..n {
            genera[position[v]] = self.genus[v];
        }
        let mut edges: Vec<(usize, usize)> = (0..self.num_edges())
            .map(|e| {
                let (u, v) = self.edge_endpoints(e);
                let (a, b) = (position[u], position[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let legs: Vec<(u32, usize)> = self.legs().into_iter().map(|(l, h)| (l, position[self.he_vertex[h]])).collect();
        let mut g = DualGraph::build(&genera, &edges, &legs).expect("relabeling a valid graph");
        let mut branches: Vec<usize> = self.branch_points().into_iter().map(|h| position[self.he_vertex[h]]).collect();
        branches.sort_unstable();
        for v in branches {
            g.he_vertex.push(v);
            g.he_ids.push(g.he_ids.len() as u32);
            g.he_edge.push(None);
            g.he_leg.push(None);
        }
        g
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical_representative(&self) -> (CanonicalKey, DualGraph) {
        let (key, pos) = self.canonical_labeling();
        (key, self.relabeled(&pos))
    }

    /// The automorphism group: automorphisms fix every leg and act on
    /// vertices and half-edges.
    pub fn automorphisms(&self) -> Automorphisms {
        canon::automorphisms_of(self)
    }

    /// The vertex permutations induced by automorphisms, identity included.
    pub fn vertex_automorphisms(&self) -> Vec<Vec<usize>> {
        vertex_automorphisms(&self.colored(&[]))
    }

    /// Edge indices grouped by unordered endpoint pair, in edge order.
    pub(crate) fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.num_edges())
            .filter(|&e| {
                let (a, b) = self.edge_endpoints(e);
                (a, b) == (u, v) || (a, b) == (v, u)
            })
            .collect()
    }
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}
