//! Extremal assignments: the separating-bridge assignment 𝓕, extensional
//! tables, and the two-axiom verifier.

mod bridges;
mod table;
mod verify;

use std::fmt;
use std::sync::Arc;

pub use bridges::{classify_subgraph, rational_multibridges, BridgeClass, BridgeReport, Multibridge};
pub use table::{AssignmentTable, DefaultPolicy, Enlargement, TableEntryJson, TableJson};
pub use verify::{
    verify_extremal, verify_extremal_on, Axiom1Kind, Axiom1Violation, Axiom2Violation, VerificationReport,
};

use crate::error::AssignmentError;
use crate::graph::{DualGraph, UnionFind};

type Rule = dyn Fn(&DualGraph) -> Option<Vec<usize>> + Send + Sync;

#[derive(Clone)]
enum Kind {
    SeparatingBridges,
    Table(Arc<AssignmentTable>),
    Custom(Arc<Rule>),
}

/// A rule choosing a vertex subset `Z(Γ)` for each stable graph.
#[derive(Clone)]
pub struct ExtremalAssignment {
    name: String,
    kind: Kind,
}

impl fmt::Debug for ExtremalAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::SeparatingBridges => "separating-bridges",
            Kind::Table(_) => "table",
            Kind::Custom(_) => "custom",
        };
        f.debug_struct("ExtremalAssignment").field("name", &self.name).field("kind", &kind).finish()
    }
}

impl ExtremalAssignment {
    /// 𝓕: the union of all separating rational multibridges.
    pub fn separating_bridges() -> Self {
        Self { name: "F".to_string(), kind: Kind::SeparatingBridges }
    }

    pub fn from_table(table: AssignmentTable) -> Self {
        Self { name: table.name().to_string(), kind: Kind::Table(Arc::new(table)) }
    }

    /// Intrinsic rule; returning `None` marks the graph as not covered.
    pub fn from_fn(
        name: impl Into<String>,
        rule: impl Fn(&DualGraph) -> Option<Vec<usize>> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), kind: Kind::Custom(Arc::new(rule)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> Option<&AssignmentTable> {
        match &self.kind {
            Kind::Table(t) => Some(t),
            _ => None,
        }
    }

    /// `Z(g)` as sorted vertex indices of `g`.
    pub fn evaluate(&self, g: &DualGraph) -> Result<Vec<usize>, AssignmentError> {
        let mut z = match &self.kind {
            Kind::SeparatingBridges => Some(assignment_f(g)),
            Kind::Table(t) => t.evaluate(g),
            Kind::Custom(rule) => rule(g),
        }
        .ok_or_else(|| AssignmentError::Coverage { name: self.name.clone(), key: g.canonical_form().to_hex() })?;
        z.sort_unstable();
        z.dedup();
        if let Some(&v) = z.iter().find(|&&v| v >= g.num_vertices()) {
            return Err(AssignmentError::BadVertex {
                key: g.canonical_form().to_hex(),
                vertex: v,
                vertices: g.num_vertices(),
            });
        }
        Ok(z)
    }
}

/// 𝓕(Γ): leg-free genus-0 vertices all of whose edges are separating.
///
/// These are exactly the vertices lying on some separating rational
/// multibridge: such a bridge is a tree meeting each complement component
/// once, so all its edges separate, and conversely such a vertex alone is
/// a separating bridge.
pub fn assignment_f(g: &DualGraph) -> Vec<usize> {
    let mut separating = vec![false; g.num_edges()];
    for e in g.separating_edges() {
        separating[e] = true;
    }
    (0..g.num_vertices())
        .filter(|&v| {
            g.vertex_genus(v) == 0
                && g.legs_at(v).is_empty()
                && g.branch_points().iter().all(|&h| g.halfedge_vertex(h) != v)
                && g.edges_at(v).iter().all(|&e| separating[e])
        })
        .collect()
}

/// Whether every connected component of the complete subgraph on `Z(Γ)` is
/// a separating or quasi-separating rational multibridge.
pub fn is_z_quasi_separating(g: &DualGraph, a: &ExtremalAssignment) -> Result<bool, AssignmentError> {
    let z = a.evaluate(g)?;
    Ok(subset_components(g, &z).iter().all(|c| classify_subgraph(g, c).is_some_and(|b| b.class.is_quasi_separating())))
}

/// Connected components of the complete subgraph on `subset`.
pub fn subset_components(g: &DualGraph, subset: &[usize]) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v] = true;
    }
    let mut uf = UnionFind::new(n);
    for e in 0..g.num_edges() {
        let (u, v) = g.edge_endpoints(e);
        if inside[u] && inside[v] {
            uf.union(u, v);
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if inside[v] {
            by_root[uf.find(v)].push(v);
        }
    }
    by_root.into_iter().filter(|c| !c.is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        let tails = DualGraph::build(&[0, 1, 1, 1], &[(0, 1), (0, 2), (0, 3)], &[]).unwrap();
        assert_eq!(assignment_f(&tails), vec![0]);
        let four = DualGraph::build(&[1, 0], &[(0, 1); 4], &[]).unwrap();
        assert!(assignment_f(&four).is_empty());
        let smooth = DualGraph::build(&[3], &[], &[]).unwrap();
        assert!(assignment_f(&smooth).is_empty());
    }

    #[test]
    fn quasi_separating_examples() {
        let f = ExtremalAssignment::separating_bridges();
        let four = DualGraph::build(&[1, 0], &[(0, 1); 4], &[]).unwrap();
        assert!(is_z_quasi_separating(&four, &f).unwrap());
        let bad = ExtremalAssignment::from_fn("bridge", |g| {
            Some((0..g.num_vertices()).filter(|&v| g.vertex_genus(v) == 0).collect())
        });
        assert!(!is_z_quasi_separating(&four, &bad).unwrap());
        let three = DualGraph::build(&[1, 0], &[(0, 1); 3], &[]).unwrap();
        assert!(is_z_quasi_separating(&three, &bad).unwrap());
        let none = ExtremalAssignment::from_fn("none", |_| Some(Vec::new()));
        assert!(is_z_quasi_separating(&four, &none).unwrap());
    }

    #[test]
    fn uncovered_graphs_are_reported() {
        let partial = ExtremalAssignment::from_fn("partial", |g| (g.num_vertices() == 1).then(Vec::new));
        let two = DualGraph::build(&[1, 1], &[(0, 1)], &[]).unwrap();
        assert!(matches!(partial.evaluate(&two), Err(AssignmentError::Coverage { .. })));
    }
}
