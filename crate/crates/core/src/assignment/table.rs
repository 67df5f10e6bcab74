use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::enumerate::GraphCatalog;
use crate::error::AssignmentError;
use crate::graph::io::GraphJson;
use crate::graph::{CanonicalKey, DualGraph};

/// What an assignment table says about graphs it does not list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefaultPolicy {
    /// Unlisted graphs get `Z = ∅`.
    #[default]
    Empty,
    /// Unlisted graphs are a coverage error.
    Error,
}

/// One table row: either a canonical key with vertex indices of the
/// catalog representative, or a graph with vertex ids of that graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphJson>,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub name: String,
    pub genus: u32,
    pub markings: u32,
    #[serde(default)]
    pub default: DefaultPolicy,
    pub entries: Vec<TableEntryJson>,
}

/// Extensional assignment keyed by canonical key. Vertex sets are stored
/// in the canonical vertex order, i.e. as vertex indices of the canonical
/// representative, exactly as given (not closed under automorphisms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentTable {
    name: String,
    genus: u32,
    markings: u32,
    default: DefaultPolicy,
    entries: HashMap<CanonicalKey, Vec<usize>>,
}

/// An entry that grew when closed under automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enlargement {
    pub key: CanonicalKey,
    pub given: Vec<usize>,
    pub closed: Vec<usize>,
}

impl AssignmentTable {
    pub fn new(name: impl Into<String>, genus: u32, markings: u32, default: DefaultPolicy) -> Self {
        Self { name: name.into(), genus, markings, default, entries: HashMap::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn markings(&self) -> u32 {
        self.markings
    }

    pub fn default_policy(&self) -> DefaultPolicy {
        self.default
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sets the entry for `key`; `vertices` index the canonical representative.
    pub fn insert(&mut self, key: CanonicalKey, vertices: &[usize]) -> Result<(), AssignmentError> {
        let n = key.num_vertices().ok_or_else(|| AssignmentError::UnknownKey(key.to_hex()))?;
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        if let Some(&v) = set.iter().find(|&&v| v >= n) {
            return Err(AssignmentError::BadVertex { key: key.to_hex(), vertex: v, vertices: n });
        }
        self.entries.insert(key, set.into_iter().collect());
        Ok(())
    }

    /// Sets the entry for the class of `g`; `vertices` index `g`.
    pub fn insert_graph(&mut self, g: &DualGraph, vertices: &[usize]) -> Result<(), AssignmentError> {
        let (key, position) = g.canonical_labeling();
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.num_vertices()) {
            return Err(AssignmentError::BadVertex { key: key.to_hex(), vertex: v, vertices: g.num_vertices() });
        }
        let mapped: Vec<usize> = vertices.iter().map(|&v| position[v]).collect();
        self.insert(key, &mapped)
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&[usize]> {
        self.entries.get(key).map(Vec::as_slice)
    }

    /// Entries sorted by key.
    pub fn entries(&self) -> Vec<(&CanonicalKey, &[usize])> {
        let mut out: Vec<_> = self.entries.iter().map(|(k, v)| (k, v.as_slice())).collect();
        out.sort_unstable_by(|a, b| a.0.cmp(b.0));
        out
    }

    /// `Z(g)` in the vertex indices of `g`; `None` if not covered.
    pub(crate) fn evaluate(&self, g: &DualGraph) -> Option<Vec<usize>> {
        let (key, position) = g.canonical_labeling();
        match self.entries.get(&key) {
            Some(z) => Some((0..g.num_vertices()).filter(|&v| z.binary_search(&position[v]).is_ok()).collect()),
            None => match self.default {
                DefaultPolicy::Empty => Some(Vec::new()),
                DefaultPolicy::Error => None,
            },
        }
    }

    pub fn from_json(j: &TableJson) -> Result<Self, AssignmentError> {
        let mut t = Self::new(j.name.clone(), j.genus, j.markings, j.default);
        for entry in &j.entries {
            match (&entry.key, &entry.graph) {
                (Some(hex), None) => {
                    let key =
                        CanonicalKey::from_hex(hex).ok_or_else(|| AssignmentError::Json(format!("bad key `{hex}`")))?;
                    let vertices: Vec<usize> = entry.vertices.iter().map(|&v| v as usize).collect();
                    t.insert(key, &vertices)?;
                }
                (None, Some(gj)) => {
                    let g = DualGraph::try_from(gj)?;
                    let mut vertices = Vec::with_capacity(entry.vertices.len());
                    for &id in &entry.vertices {
                        vertices.push(g.vertex_index(id).ok_or_else(|| {
                            AssignmentError::Json(format!("entry names vertex id {id} not in its graph"))
                        })?);
                    }
                    t.insert_graph(&g, &vertices)?;
                }
                _ => return Err(AssignmentError::Json("each entry needs exactly one of `key` or `graph`".into())),
            }
        }
        Ok(t)
    }

    pub fn from_json_str(s: &str) -> Result<Self, AssignmentError> {
        let j: TableJson = serde_json::from_str(s).map_err(|e| AssignmentError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            name: self.name.clone(),
            genus: self.genus,
            markings: self.markings,
            default: self.default,
            entries: self
                .entries()
                .into_iter()
                .map(|(k, v)| TableEntryJson {
                    key: Some(k.to_hex()),
                    graph: None,
                    vertices: v.iter().map(|&x| x as u32).collect(),
                })
                .collect(),
        }
    }

    /// Checks the table against `catalog`: same type, every key present.
    pub fn check_against(&self, catalog: &GraphCatalog) -> Result<(), AssignmentError> {
        if (self.genus, self.markings) != (catalog.genus(), catalog.markings()) {
            return Err(AssignmentError::TypeMismatch {
                table_genus: self.genus,
                table_markings: self.markings,
                genus: catalog.genus(),
                markings: catalog.markings(),
            });
        }
        for (key, _) in self.entries() {
            if catalog.position(key).is_none() {
                return Err(AssignmentError::UnknownKey(key.to_hex()));
            }
        }
        Ok(())
    }

    /// Copy with every entry replaced by its orbit under the automorphisms of
    /// the representative, and the entries that grew.
    pub fn closed_under_automorphisms(
        &self,
        catalog: &GraphCatalog,
    ) -> Result<(AssignmentTable, Vec<Enlargement>), AssignmentError> {
        self.check_against(catalog)?;
        let mut closed = self.clone();
        let mut grown = Vec::new();
        for (key, given) in self.entries() {
            let rep = catalog.graph(catalog.position(key).expect("checked above"));
            let mut orbit: BTreeSet<usize> = given.iter().copied().collect();
            for sigma in rep.vertex_automorphisms() {
                orbit.extend(given.iter().map(|&v| sigma[v]));
            }
            let orbit: Vec<usize> = orbit.into_iter().collect();
            if orbit != given {
                grown.push(Enlargement { key: key.clone(), given: given.to_vec(), closed: orbit.clone() });
                closed.entries.insert(key.clone(), orbit);
            }
        }
        Ok((closed, grown))
    }
}
