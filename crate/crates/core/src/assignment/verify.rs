use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExtremalAssignment;
use crate::enumerate::{for_each_degeneration_into, Degeneration, GraphCatalog};
use crate::error::AssignmentError;
use crate::graph::CanonicalKey;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Axiom1Kind {
    /// `Z(Γ) = V(Γ)`.
    NotProper,
    /// Some automorphism moves `Z(Γ)`; `automorphism[v]` is the image of `v`.
    NotInvariant { automorphism: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom1Violation {
    pub graph: usize,
    pub key: CanonicalKey,
    pub assigned: Vec<usize>,
    #[serde(flatten)]
    pub kind: Axiom1Kind,
}

/// A source vertex `v` with `v ∈ Z(source)` disagreeing with
/// `V(M_v) ⊆ Z(target)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom2Violation {
    pub source: usize,
    pub target: usize,
    pub contracted: Vec<usize>,
    pub vertex: usize,
    pub in_source: bool,
    pub m_v: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub assignment: String,
    pub genus: u32,
    pub markings: u32,
    pub graphs: usize,
    pub degenerations: usize,
    pub axiom1: Vec<Axiom1Violation>,
    pub axiom2: Vec<Axiom2Violation>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.axiom1.is_empty() && self.axiom2.is_empty()
    }
}

/// `Z` of every catalog entry as a bit mask over the representative's
/// vertices.
fn assigned_masks(a: &ExtremalAssignment, catalog: &GraphCatalog) -> Result<Vec<u64>, AssignmentError> {
    let zs: Vec<Result<u64, AssignmentError>> = catalog
        .graphs()
        .par_iter()
        .map(|g| {
            assert!(g.num_vertices() <= 64, "vertex sets are u64 masks");
            Ok(a.evaluate(g)?.iter().fold(0u64, |m, &v| m | 1 << v))
        })
        .collect();
    zs.into_iter().collect()
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

fn axiom1(catalog: &GraphCatalog, zs: &[u64]) -> Vec<Axiom1Violation> {
    (0..catalog.len())
        .into_par_iter()
        .filter_map(|i| {
            let g = catalog.graph(i);
            let z = zs[i];
            let all = if g.num_vertices() == 64 { u64::MAX } else { (1u64 << g.num_vertices()) - 1 };
            let kind = if z == all {
                Some(Axiom1Kind::NotProper)
            } else {
                g.vertex_automorphisms()
                    .into_iter()
                    .find(|sigma| bits(z).iter().fold(0u64, |m, &v| m | 1 << sigma[v]) != z)
                    .map(|automorphism| Axiom1Kind::NotInvariant { automorphism })
            };
            kind.map(|kind| Axiom1Violation { graph: i, key: catalog.key(i).clone(), assigned: bits(z), kind })
        })
        .collect()
}

/// Axiom (2) for one degeneration, given the source vertex of every
/// target vertex.
fn axiom2(
    zs: &[u64],
    source: usize,
    target: usize,
    vertex_of: &[usize],
    contracted: impl Fn() -> Vec<usize>,
    out: &mut Vec<Axiom2Violation>,
) {
    let k = vertex_of.iter().max().map_or(0, |&m| m + 1);
    let mut all_in = vec![true; k];
    for (w, &v) in vertex_of.iter().enumerate() {
        if zs[target] >> w & 1 == 0 {
            all_in[v] = false;
        }
    }
    for (v, &inside) in all_in.iter().enumerate() {
        let in_source = zs[source] >> v & 1 == 1;
        if in_source != inside {
            out.push(Axiom2Violation {
                source,
                target,
                contracted: contracted(),
                vertex: v,
                in_source,
                m_v: (0..vertex_of.len()).filter(|&w| vertex_of[w] == v).collect(),
            });
        }
    }
}

/// Checks both axioms over the whole catalog and every degeneration
/// between its entries. Degenerations are generated per target and never
/// stored; the report lists violations in (target, edge subset) order.
pub fn verify_extremal(a: &ExtremalAssignment, catalog: &GraphCatalog) -> Result<VerificationReport, AssignmentError> {
    let zs = assigned_masks(a, catalog)?;
    let axiom1 = axiom1(catalog, &zs);
    let per_target: Vec<(usize, Vec<Axiom2Violation>)> = (0..catalog.len())
        .into_par_iter()
        .map(|t| {
            let mut count = 0;
            let mut out = Vec::new();
            for_each_degeneration_into(catalog, t, |d| {
                count += 1;
                axiom2(&zs, d.source, d.target, d.vertex_of, || d.contracted(), &mut out);
            });
            (count, out)
        })
        .collect();
    let degenerations = per_target.iter().map(|(c, _)| c).sum();
    let axiom2 = per_target.into_iter().flat_map(|(_, v)| v).collect();
    Ok(VerificationReport {
        assignment: a.name().to_string(),
        genus: catalog.genus(),
        markings: catalog.markings(),
        graphs: catalog.len(),
        degenerations,
        axiom1,
        axiom2,
    })
}

/// [`verify_extremal`] over an explicit list of degenerations.
pub fn verify_extremal_on(
    a: &ExtremalAssignment,
    catalog: &GraphCatalog,
    degenerations: &[Degeneration],
) -> Result<VerificationReport, AssignmentError> {
    let zs = assigned_masks(a, catalog)?;
    let axiom1 = axiom1(catalog, &zs);
    let mut axiom2_out = Vec::new();
    for d in degenerations {
        let mut vertex_of = vec![0; catalog.graph(d.target).num_vertices()];
        for (v, m) in d.vertex_map.iter().enumerate() {
            for &w in m {
                vertex_of[w] = v;
            }
        }
        axiom2(&zs, d.source, d.target, &vertex_of, || d.contracted.clone(), &mut axiom2_out);
    }
    Ok(VerificationReport {
        assignment: a.name().to_string(),
        genus: catalog.genus(),
        markings: catalog.markings(),
        graphs: catalog.len(),
        degenerations: degenerations.len(),
        axiom1,
        axiom2: axiom2_out,
    })
}
