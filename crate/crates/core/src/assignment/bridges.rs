use serde::{Deserialize, Serialize};

use crate::graph::{CanonicalKey, DualGraph, UnionFind};

/// How a rational multibridge meets its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BridgeClass {
    /// Every complement component attaches exactly once.
    Separating,
    /// Not separating; one complement component attaches 2 or 3 times and
    /// every other one attaches once.
    QuasiSeparating,
    General,
}

impl BridgeClass {
    /// Class of an attachment profile (attaching edges per complement
    /// component).
    pub fn of_profile(profile: &[usize]) -> Self {
        let heavy: Vec<usize> = profile.iter().copied().filter(|&c| c > 1).collect();
        match heavy.as_slice() {
            [] => BridgeClass::Separating,
            [c] if *c <= 3 => BridgeClass::QuasiSeparating,
            _ => BridgeClass::General,
        }
    }

    /// Separating bridges count as quasi-separating.
    pub fn is_quasi_separating(self) -> bool {
        self != BridgeClass::General
    }
}

/// A genus-0 tree of leg-free vertices, recorded with its attaching data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multibridge {
    /// Sorted vertex indices of the host.
    pub vertices: Vec<usize>,
    /// Number of attaching edges.
    pub m: usize,
    /// Attaching edges per complement component, in decreasing order.
    pub profile: Vec<usize>,
    pub class: BridgeClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub host: CanonicalKey,
    pub bridges: Vec<Multibridge>,
}

/// `Some` iff `subset` spans a rational multibridge of `g`: it is connected,
/// every vertex has genus 0 and no legs, the complete subgraph on it is a
/// tree, it has a nonempty complement, and every vertex has valence at
/// least 3 counting attaching edges.
pub fn classify_subgraph(g: &DualGraph, subset: &[usize]) -> Option<Multibridge> {
    let n = g.num_vertices();
    let mut inside = vec![false; n];
    for &v in subset {
        if v >= n || inside[v] {
            return None;
        }
        inside[v] = true;
    }
    if subset.is_empty() || subset.len() == n {
        return None;
    }
    for &v in subset {
        if g.vertex_genus(v) != 0 || !g.legs_at(v).is_empty() || g.valence(v) < 3 {
            return None;
        }
    }
    let mut internal = UnionFind::new(n);
    let mut outside = UnionFind::new(n);
    let mut internal_edges = 0;
    for e in 0..g.num_edges() {
        let (u, v) = g.edge_endpoints(e);
        match (inside[u], inside[v]) {
            (true, true) => {
                // a repeated union means a loop, a parallel pair or a cycle
                if !internal.union(u, v) {
                    return None;
                }
                internal_edges += 1;
            }
            (false, false) => {
                outside.union(u, v);
            }
            _ => {}
        }
    }
    if internal_edges + 1 != subset.len() {
        return None;
    }
    let mut counts = vec![0usize; n];
    let mut m = 0;
    for e in 0..g.num_edges() {
        let (u, v) = g.edge_endpoints(e);
        if inside[u] != inside[v] {
            let w = if inside[u] { v } else { u };
            counts[outside.find(w)] += 1;
            m += 1;
        }
    }
    let mut profile: Vec<usize> = (0..n).filter(|&v| !inside[v] && outside.find(v) == v).map(|r| counts[r]).collect();
    profile.sort_unstable_by(|a, b| b.cmp(a));
    let mut vertices = subset.to_vec();
    vertices.sort_unstable();
    Some(Multibridge { vertices, m, class: BridgeClass::of_profile(&profile), profile })
}

/// All rational multibridges of `g` that are maximal under inclusion, found
/// by running over every connected set of leg-free genus-0 vertices.
pub fn rational_multibridges(g: &DualGraph) -> BridgeReport {
    let rational: Vec<usize> =
        (0..g.num_vertices()).filter(|&v| g.vertex_genus(v) == 0 && g.legs_at(v).is_empty()).collect();
    assert!(rational.len() < 32, "bridge search is exhaustive over subsets");
    let mut found: Vec<(u32, Multibridge)> = Vec::new();
    for mask in 1u32..(1u32 << rational.len()) {
        let subset: Vec<usize> = (0..rational.len()).filter(|&i| mask >> i & 1 == 1).map(|i| rational[i]).collect();
        if let Some(b) = classify_subgraph(g, &subset) {
            found.push((mask, b));
        }
    }
    let masks: Vec<u32> = found.iter().map(|&(m, _)| m).collect();
    let mut bridges: Vec<Multibridge> =
        found.into_iter().filter(|&(m, _)| !masks.iter().any(|&o| o != m && o & m == m)).map(|(_, b)| b).collect();
    bridges.sort_unstable_by(|a, b| a.vertices.cmp(&b.vertices));
    BridgeReport { host: g.canonical_form(), bridges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_elliptic_tails() {
        let g = DualGraph::build(&[0, 1, 1, 1], &[(0, 1), (0, 2), (0, 3)], &[]).unwrap();
        let r = rational_multibridges(&g);
        assert_eq!(r.bridges.len(), 1);
        let b = &r.bridges[0];
        assert_eq!((b.vertices.clone(), b.m, b.class), (vec![0], 3, BridgeClass::Separating));
        assert_eq!(b.profile, vec![1, 1, 1]);
    }

    #[test]
    fn four_fold_attachment_is_general() {
        let g = DualGraph::build(&[1, 0], &[(0, 1); 4], &[]).unwrap();
        let r = rational_multibridges(&g);
        assert_eq!(r.bridges.len(), 1);
        let b = &r.bridges[0];
        assert_eq!((b.vertices.clone(), b.m, b.class), (vec![1], 4, BridgeClass::General));
        assert_eq!(b.profile, vec![4]);
    }

    #[test]
    fn banana_of_genus_two_vertices_has_none() {
        let g = DualGraph::build(&[2, 2], &[(0, 1), (0, 1)], &[]).unwrap();
        assert!(rational_multibridges(&g).bridges.is_empty());
    }

    #[test]
    fn profiles() {
        assert_eq!(BridgeClass::of_profile(&[1, 1]), BridgeClass::Separating);
        assert_eq!(BridgeClass::of_profile(&[3, 1]), BridgeClass::QuasiSeparating);
        assert_eq!(BridgeClass::of_profile(&[2, 2]), BridgeClass::General);
        assert_eq!(BridgeClass::of_profile(&[4]), BridgeClass::General);
    }

    #[test]
    fn loops_and_parallels_are_not_trees() {
        let g = DualGraph::build(&[0, 1], &[(0, 0), (0, 1)], &[]).unwrap();
        assert!(classify_subgraph(&g, &[0]).is_none());
        let g = DualGraph::build(&[0, 0, 1, 1], &[(0, 1), (0, 1), (0, 2), (1, 3)], &[]).unwrap();
        assert!(classify_subgraph(&g, &[0, 1]).is_none());
        let single = classify_subgraph(&g, &[0]).unwrap();
        assert_eq!(single.profile, vec![2, 1]);
        assert_eq!(single.class, BridgeClass::QuasiSeparating);
    }
}
