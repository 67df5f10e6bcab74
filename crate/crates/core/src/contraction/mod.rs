//! Contracting vertex subsets to singular points, classification of the
//! resulting axis points, and the combinatorial fiber over an axis graph.

mod classify;
mod fiber;
pub mod io;
mod trees;

use std::collections::BTreeSet;

pub use classify::{classify_axis_points, AxisClassification, AxisPointClass, PointClass};
pub use fiber::{fiber_graph, fiber_size, fiber_strata, FiberFactor, FiberGraph, FiberStrata};
pub use trees::{stable_trees, LeafTree};

use crate::assignment::subset_components;
use crate::error::ContractionError;
use crate::graph::{canonical_labeling, CanonicalKey, ColoredMultigraph, DualGraph, UnionFind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisComponent {
    pub id: u32,
    pub genus: u32,
    /// Sorted leg labels.
    pub legs: Vec<u32>,
    /// Number of branch-point slots; each is used by exactly one point.
    pub slots: usize,
}

/// A singular point of type `(genus, m)` with `m = slots.len()` branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub genus: u32,
    /// `(component index, slot)` for each branch.
    pub slots: Vec<(usize, usize)>,
    /// Marked points sitting on the singularity; always empty for
    /// axis-like models.
    pub legs: Vec<u32>,
}

impl SingularPoint {
    pub fn m(&self) -> usize {
        self.slots.len()
    }

    pub fn is_node(&self) -> bool {
        self.genus == 0 && self.slots.len() == 2 && self.legs.is_empty()
    }
}

/// Components glued at singular points (hyperedges over branch slots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisGraph {
    components: Vec<AxisComponent>,
    points: Vec<SingularPoint>,
    genus: u32,
}

impl AxisGraph {
    /// Validates slot usage, leg uniqueness, point stability and
    /// connectedness, and computes the genus.
    pub fn new(components: Vec<AxisComponent>, points: Vec<SingularPoint>) -> Result<Self, ContractionError> {
        let malformed = |s: String| Err(ContractionError::Malformed(s));
        if components.is_empty() {
            return malformed("no components".into());
        }
        let mut ids = BTreeSet::new();
        for c in &components {
            if !ids.insert(c.id) {
                return malformed(format!("duplicate component id {}", c.id));
            }
        }
        let mut used: Vec<Vec<bool>> = components.iter().map(|c| vec![false; c.slots]).collect();
        for (p, point) in points.iter().enumerate() {
            if point.slots.is_empty() {
                return malformed(format!("singular point {p} has no branches"));
            }
            for &(c, s) in &point.slots {
                match used.get_mut(c).and_then(|u| u.get_mut(s)) {
                    None => return malformed(format!("singular point {p} names missing slot ({c}, {s})")),
                    Some(true) => return malformed(format!("slot ({c}, {s}) is used twice")),
                    Some(u) => *u = true,
                }
            }
            let special = point.slots.len() + point.legs.len();
            if !point.is_node() && 2 * point.genus as i64 - 2 + special as i64 <= 0 {
                return Err(ContractionError::UnstableComponent { component: p, genus: point.genus, points: special });
            }
        }
        for (c, u) in used.iter().enumerate() {
            if let Some(s) = u.iter().position(|&x| !x) {
                return malformed(format!("slot ({c}, {s}) is not glued"));
            }
        }
        let mut labels = BTreeSet::new();
        for legs in components.iter().map(|c| &c.legs).chain(points.iter().map(|p| &p.legs)) {
            for &l in legs {
                if l == 0 || !labels.insert(l) {
                    return malformed(format!("leg label {l} is invalid or repeated"));
                }
            }
        }
        let mut a = AxisGraph { components, points, genus: 0 };
        for c in &mut a.components {
            c.legs.sort_unstable();
        }
        for p in &mut a.points {
            p.legs.sort_unstable();
        }
        let star = a.star_expansion();
        if !star.is_connected() {
            return Err(ContractionError::Disconnected);
        }
        a.genus = star.genus();
        Ok(a)
    }

    /// The axis graph of `g` with every edge a node.
    pub fn from_graph(g: &DualGraph) -> Result<Self, ContractionError> {
        z_contract(g, &[])
    }

    pub fn components(&self) -> &[AxisComponent] {
        &self.components
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Every leg label on components and points.
    pub fn num_legs(&self) -> usize {
        self.components.iter().map(|c| c.legs.len()).sum::<usize>()
            + self.points.iter().map(|p| p.legs.len()).sum::<usize>()
    }

    /// The dual graph with each singular point replaced by a vertex of its
    /// genus carrying its legs, joined to the component of each branch.
    /// Components come first, then one vertex per point; edges run over
    /// points and their slots in order.
    pub fn star_expansion(&self) -> DualGraph {
        let c = self.components.len();
        let mut genera: Vec<u32> = self.components.iter().map(|x| x.genus).collect();
        genera.extend(self.points.iter().map(|p| p.genus));
        let edges: Vec<(usize, usize)> = self
            .points
            .iter()
            .enumerate()
            .flat_map(|(p, point)| point.slots.iter().map(move |&(comp, _)| (comp, c + p)))
            .collect();
        let mut legs: Vec<(u32, usize)> = Vec::new();
        for (i, x) in self.components.iter().enumerate() {
            legs.extend(x.legs.iter().map(|&l| (l, i)));
        }
        for (p, point) in self.points.iter().enumerate() {
            legs.extend(point.legs.iter().map(|&l| (l, c + p)));
        }
        DualGraph::build(&genera, &edges, &legs).expect("validated axis graphs expand to valid graphs")
    }

    /// Key equal for two axis graphs iff they are isomorphic: the star
    /// expansion is canonized with sentinel vertices tagged apart from
    /// components.
    pub fn canonical_form(&self) -> CanonicalKey {
        let mut colors: Vec<Vec<u32>> = self.components.iter().map(|x| [&[0, x.genus][..], &x.legs].concat()).collect();
        colors.extend(self.points.iter().map(|p| [&[1, p.genus, p.m() as u32][..], &p.legs].concat()));
        let c = self.components.len();
        let mut g = ColoredMultigraph::new(colors);
        for (p, point) in self.points.iter().enumerate() {
            for &(comp, _) in &point.slots {
                g.add_edge(comp, c + p);
            }
        }
        canonical_labeling(&g).key
    }

    /// Ordinary dual graph when every point is a node.
    pub fn to_graph(&self) -> Option<DualGraph> {
        if !self.points.iter().all(SingularPoint::is_node) {
            return None;
        }
        let genera: Vec<u32> = self.components.iter().map(|x| x.genus).collect();
        let edges: Vec<(usize, usize)> = self.points.iter().map(|p| (p.slots[0].0, p.slots[1].0)).collect();
        let legs: Vec<(u32, usize)> =
            self.components.iter().enumerate().flat_map(|(i, x)| x.legs.iter().map(move |&l| (l, i))).collect();
        Some(DualGraph::build(&genera, &edges, &legs).expect("validated axis graphs are valid graphs"))
    }

    /// Connected components (as component indices) of the normalization at
    /// point `p`: components stay joined through every other point.
    pub(crate) fn normalization_at(&self, p: usize) -> Vec<Vec<usize>> {
        let c = self.components.len();
        let mut uf = UnionFind::new(c);
        for (q, point) in self.points.iter().enumerate() {
            if q != p {
                for w in point.slots.windows(2) {
                    uf.union(w[0].0, w[1].0);
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); c];
        for i in 0..c {
            by_root[uf.find(i)].push(i);
        }
        by_root.into_iter().filter(|x| !x.is_empty()).collect()
    }
}

/// Replaces each connected component `Z_j` of the complete subgraph on `z`
/// by a singular point of type `(genus(Z_j), #attaching edges)`; the other
/// vertices become components and the remaining edges nodes.
///
/// Points for the `Z_j` come first, ordered by smallest vertex, then nodes
/// in edge order. Slots are numbered in edge order. Legs on `Z_j` stay on
/// the point.
pub fn z_contract(g: &DualGraph, z: &[usize]) -> Result<AxisGraph, ContractionError> {
    let n = g.num_vertices();
    let mut in_z = vec![false; n];
    for &v in z {
        if v >= n {
            return Err(ContractionError::UnknownVertex(v));
        }
        in_z[v] = true;
    }
    if in_z.iter().all(|&x| x) {
        return Err(ContractionError::NotProper);
    }
    let zs: Vec<usize> = (0..n).filter(|&v| in_z[v]).collect();
    let parts = subset_components(g, &zs);
    let mut point_of = vec![usize::MAX; n];
    for (j, part) in parts.iter().enumerate() {
        for &v in part {
            point_of[v] = j;
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for v in (0..n).filter(|&v| !in_z[v]) {
        comp_of[v] = components.len();
        let mut legs = g.legs_at(v);
        legs.sort_unstable();
        components.push(AxisComponent { id: g.vertex_id(v), genus: g.vertex_genus(v), legs, slots: 0 });
    }
    let mut points: Vec<SingularPoint> = parts
        .iter()
        .map(|part| {
            let mut legs: Vec<u32> = part.iter().flat_map(|&v| g.legs_at(v)).collect();
            legs.sort_unstable();
            SingularPoint { genus: part.iter().map(|&v| g.vertex_genus(v)).sum(), slots: Vec::new(), legs }
        })
        .collect();
    let mut internal = vec![0usize; parts.len()];
    let new_slot = |components: &mut Vec<AxisComponent>, v: usize| {
        let c = comp_of[v];
        components[c].slots += 1;
        (c, components[c].slots - 1)
    };
    for e in 0..g.num_edges() {
        let (u, v) = g.edge_endpoints(e);
        match (in_z[u], in_z[v]) {
            (true, true) => internal[point_of[u]] += 1,
            (true, false) => {
                let s = new_slot(&mut components, v);
                points[point_of[u]].slots.push(s);
            }
            (false, true) => {
                let s = new_slot(&mut components, u);
                points[point_of[v]].slots.push(s);
            }
            (false, false) => {
                let a = new_slot(&mut components, u);
                let b = new_slot(&mut components, v);
                points.push(SingularPoint { genus: 0, slots: vec![a, b], legs: Vec::new() });
            }
        }
    }
    for (j, part) in parts.iter().enumerate() {
        // genus of Z_j: Σ g_v + b₁ of its complete subgraph
        let p = &mut points[j];
        p.genus += (internal[j] + 1 - part.len()) as u32;
        let special = p.slots.len() + p.legs.len();
        if 2 * p.genus as i64 - 2 + special as i64 <= 0 {
            return Err(ContractionError::UnstableComponent { component: j, genus: p.genus, points: special });
        }
    }
    AxisGraph::new(components, points)
}
