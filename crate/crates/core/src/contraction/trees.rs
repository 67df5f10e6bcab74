use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::graph::DualGraph;

/// A stable genus-0 tree with leaves `0..m`: every vertex has valence at
/// least 3 counting leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafTree {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    leaves: Vec<usize>,
}

impl LeafTree {
    /// The one-vertex tree with `m` leaves.
    pub fn star(m: usize) -> Self {
        LeafTree { num_vertices: 1, edges: Vec::new(), leaves: vec![0; m] }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex carrying leaf `i`.
    pub fn leaf_vertex(&self, i: usize) -> usize {
        self.leaves[i]
    }

    /// Leaf bipartitions cut by the internal edges, each given by the side
    /// without leaf 0 as a bit mask, sorted. Two trees are isomorphic over
    /// their leaf labels iff their splits agree.
    pub fn splits(&self) -> Vec<u64> {
        let full = (1u64 << self.leaves.len()) - 1;
        let mut out: Vec<u64> = (0..self.edges.len())
            .map(|e| {
                let side = self.leaves_beyond(e);
                if side & 1 == 1 {
                    full & !side
                } else {
                    side
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Leaves on the side of edge `e` containing its second endpoint.
    fn leaves_beyond(&self, e: usize) -> u64 {
        let (from, start) = self.edges[e];
        let mut seen = vec![false; self.num_vertices];
        seen[from] = true;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (f, &(a, b)) in self.edges.iter().enumerate() {
                if f == e {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        self.leaves.iter().enumerate().filter(|&(_, &v)| seen[v] && v != from).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// As a dual graph with genus-0 vertices and leaf `i` as leg `i + 1`.
    pub fn to_graph(&self) -> DualGraph {
        let legs: Vec<(u32, usize)> = self.leaves.iter().enumerate().map(|(i, &v)| (i as u32 + 1, v)).collect();
        DualGraph::build(&vec![0; self.num_vertices], &self.edges, &legs).expect("trees are valid graphs")
    }
}

/// All stable genus-0 trees with `m` labeled leaves, one per isomorphism
/// class, ordered by edge count then splits. Empty for `m < 3`.
///
/// Generated by splitting vertices of the star along new edges; results
/// are cached per `m`.
pub fn stable_trees(m: usize) -> Arc<Vec<LeafTree>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<LeafTree>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("tree cache").get(&m) {
        return t.clone();
    }
    let trees = Arc::new(generate(m));
    cache.lock().expect("tree cache").insert(m, trees.clone());
    trees
}

fn generate(m: usize) -> Vec<LeafTree> {
    assert!(m < 64, "leaf sets are u64 masks");
    if m < 3 {
        return Vec::new();
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let star = LeafTree::star(m);
    seen.insert(star.splits());
    let mut out = vec![star.clone()];
    let mut level = vec![star];
    while !level.is_empty() {
        let mut next = Vec::new();
        for t in &level {
            for child in splits_of(t) {
                if seen.insert(child.splits()) {
                    next.push(child);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    let mut keyed: Vec<(usize, Vec<u64>, LeafTree)> = out.into_iter().map(|t| (t.edges.len(), t.splits(), t)).collect();
    keyed.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, t)| t).collect()
}

#[derive(Clone, Copy)]
enum End {
    Edge(usize, bool),
    Leaf(usize),
}

/// Trees obtained by splitting one vertex into two, each keeping at least
/// two of the old incidences.
fn splits_of(t: &LeafTree) -> Vec<LeafTree> {
    let mut out = Vec::new();
    for v in 0..t.num_vertices {
        let mut ends = Vec::new();
        for (e, &(a, b)) in t.edges.iter().enumerate() {
            if a == v {
                ends.push(End::Edge(e, false));
            }
            if b == v {
                ends.push(End::Edge(e, true));
            }
        }
        ends.extend((0..t.leaves.len()).filter(|&i| t.leaves[i] == v).map(End::Leaf));
        let k = ends.len();
        // the first incidence stays on v
        for mask in 0u64..(1 << (k - 1)) {
            let moved = mask.count_ones() as usize;
            if moved < 2 || k - moved < 2 {
                continue;
            }
            let mut c = t.clone();
            let w = c.num_vertices;
            c.num_vertices += 1;
            for (i, end) in ends.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    match *end {
                        End::Edge(e, false) => c.edges[e].0 = w,
                        End::Edge(e, true) => c.edges[e].1 = w,
                        End::Leaf(l) => c.leaves[l] = w,
                    }
                }
            }
            c.edges.push((v, w));
            out.push(c);
        }
    }
    out
}
