//! Independent oracles. Nothing here calls the search code under test
//! except `canonical_form`, which is itself checked against
//! [`brute_key`] on small catalogs.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use torelli_graphs::enumerate::{enumerate_stable_graphs, GraphCatalog};
use torelli_graphs::{CanonicalKey, DualGraph};

/// Every `(g, n)` with `2g - 2 + n > 0` and `3g - 3 + n <= bound`.
pub fn types_up_to(bound: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for g in 0..=bound.max(0) as u32 {
        for n in 0..=bound as u32 + 3 {
            let (gi, ni) = (g as i64, n as i64);
            if 2 * gi - 2 + ni > 0 && 3 * gi - 3 + ni <= bound {
                out.push((g, n));
            }
        }
    }
    out
}

/// Catalogs shared between tests of one binary.
pub fn catalog(g: u32, n: u32) -> Arc<GraphCatalog> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<GraphCatalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&(g, n)) {
        return c.clone();
    }
    let c = Arc::new(enumerate_stable_graphs(g, n).unwrap());
    cache.lock().unwrap().entry((g, n)).or_insert(c).clone()
}

/// Plain description: genera, edges as endpoint pairs, leg labels per vertex.
#[derive(Clone, Debug)]
pub struct Plain {
    pub genera: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
    pub legs: Vec<(u32, usize)>,
}

impl Plain {
    pub fn of(g: &DualGraph) -> Plain {
        Plain {
            genera: g.genera().to_vec(),
            edges: (0..g.num_edges()).map(|e| g.edge_endpoints(e)).collect(),
            legs: g.legs().into_iter().map(|(l, h)| (l, g.halfedge_vertex(h))).collect(),
        }
    }

    pub fn build(&self) -> DualGraph {
        DualGraph::build(&self.genera, &self.edges, &self.legs).unwrap()
    }

    pub fn genus(&self) -> i64 {
        let v = self.genera.len() as i64;
        self.genera.iter().map(|&x| x as i64).sum::<i64>() + self.edges.len() as i64 - v + self.components() as i64
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum::<usize>()
            + self.legs.iter().filter(|&&(_, w)| w == v).count()
    }

    pub fn components(&self) -> usize {
        components_without(self.genera.len(), &self.edges, None)
    }
}

/// Number of connected components after deleting edge `skip`.
pub fn components_without(n: usize, edges: &[(usize, usize)], skip: Option<usize>) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for (e, &(a, b)) in edges.iter().enumerate() {
                if Some(e) == skip {
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
    }
    count
}

/// Bridges by deletion: edges whose removal adds a component.
pub fn naive_bridges(g: &DualGraph) -> Vec<usize> {
    let p = Plain::of(g);
    let base = p.components();
    (0..p.edges.len()).filter(|&e| components_without(p.genera.len(), &p.edges, Some(e)) > base).collect()
}

/// Bridges of `g` with edge `p` deleted, in `g`'s edge indices.
pub fn naive_bridges_without(g: &DualGraph, p: usize) -> Vec<usize> {
    let plain = Plain::of(g);
    let n = plain.genera.len();
    let mut edges = plain.edges.clone();
    edges.remove(p);
    let base = components_without(n, &edges, None);
    (0..edges.len())
        .filter(|&e| components_without(n, &edges, Some(e)) > base)
        .map(|e| if e >= p { e + 1 } else { e })
        .collect()
}

fn encode(p: &Plain, perm: &[usize]) -> Vec<u32> {
    // perm[v] = new position of v
    let n = p.genera.len();
    let mut inv = vec![0; n];
    for v in 0..n {
        inv[perm[v]] = v;
    }
    let mut out = vec![n as u32];
    for &v in &inv {
        out.push(p.genera[v]);
        let mut legs: Vec<u32> = p.legs.iter().filter(|&&(_, w)| w == v).map(|&(l, _)| l).collect();
        legs.sort_unstable();
        out.push(legs.len() as u32);
        out.extend(legs);
    }
    let mut m = vec![0u32; n * n];
    for &(a, b) in &p.edges {
        let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
        m[x * n + y] += 1;
    }
    out.extend(m);
    out
}

fn permutations_within(classes: &[usize], sorted: bool, mut f: impl FnMut(&[usize])) {
    // perm[v] ranges over positions of class `classes[v]`; positions are
    // grouped by class when `sorted`, else position `s` has class `classes[s]`
    let n = classes.len();
    let mut slot_class = classes.to_vec();
    if sorted {
        slot_class.sort_unstable();
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        classes: &[usize],
        slot_class: &[usize],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if v == classes.len() {
            f(perm);
            return;
        }
        for s in 0..classes.len() {
            if !used[s] && slot_class[s] == classes[v] {
                used[s] = true;
                perm[v] = s;
                rec(v + 1, classes, slot_class, perm, used, f);
                used[s] = false;
            }
        }
    }
    rec(0, classes, &slot_class, &mut perm, &mut used, &mut f);
}

fn invariant_classes(p: &Plain) -> Vec<usize> {
    let n = p.genera.len();
    let inv: Vec<(u32, usize, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut legs: Vec<u32> = p.legs.iter().filter(|&&(_, w)| w == v).map(|&(l, _)| l).collect();
            legs.sort_unstable();
            (p.genera[v], p.valence(v), legs)
        })
        .collect();
    let mut distinct = inv.clone();
    distinct.sort();
    distinct.dedup();
    inv.iter().map(|x| distinct.binary_search(x).unwrap()).collect()
}

/// Isomorphism invariant by minimizing an encoding over all vertex
/// permutations that respect genus, valence and legs.
pub fn brute_key(g: &DualGraph) -> Vec<u32> {
    let p = Plain::of(g);
    let classes = invariant_classes(&p);
    let mut best: Option<Vec<u32>> = None;
    permutations_within(&classes, true, |perm| {
        let e = encode(&p, perm);
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap()
}

/// Number of vertex permutations preserving genera, legs and edge
/// multiplicities.
pub fn brute_vertex_automorphisms(g: &DualGraph) -> usize {
    let p = Plain::of(g);
    let classes = invariant_classes(&p);
    let id: Vec<usize> = (0..p.genera.len()).collect();
    let base = encode(&p, &id);
    let mut count = 0;
    permutations_within(&classes, false, |perm| {
        if encode(&p, perm) == base {
            count += 1;
        }
    });
    count
}

fn is_stable_plain(p: &Plain) -> bool {
    p.components() == 1 && (0..p.genera.len()).all(|v| 2 * p.genera[v] as i64 - 2 + p.valence(v) as i64 > 0)
}

/// Stable graphs of type `(g, 0)`, `g >= 2`, by listing every genus vector
/// and edge multiplicity matrix.
pub fn brute_closed(g: u32) -> Vec<DualGraph> {
    assert!(g >= 2);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for v in 1..=(2 * g as usize - 2) {
        let mut genera = vec![0u32; v];
        loop {
            let sum: u32 = genera.iter().sum();
            if sum <= g {
                let e = (g - sum) as usize + v - 1;
                let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
                let mut mult = vec![0usize; pairs.len()];
                distribute(e, 0, &mut mult, &mut |mult| {
                    let edges: Vec<(usize, usize)> =
                        pairs.iter().zip(mult).flat_map(|(&pr, &k)| std::iter::repeat(pr).take(k)).collect();
                    let p = Plain { genera: genera.clone(), edges, legs: Vec::new() };
                    if is_stable_plain(&p) {
                        let d = p.build();
                        if seen.insert(brute_key(&d)) {
                            out.push(d);
                        }
                    }
                });
            }
            // odometer over genera in 0..=g
            let mut i = 0;
            while i < v && genera[i] == g {
                genera[i] = 0;
                i += 1;
            }
            if i == v {
                break;
            }
            genera[i] += 1;
        }
    }
    out
}

fn distribute(left: usize, i: usize, mult: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i + 1 == mult.len() {
        mult[i] = left;
        f(mult);
        mult[i] = 0;
        return;
    }
    for k in 0..=left {
        mult[i] = k;
        distribute(left - k, i + 1, mult, f);
    }
    mult[i] = 0;
}

/// Stable graphs of type `(g, n + 1)` from those of type `(g, n)`: the new
/// leg goes on a vertex, on a new genus-0 vertex subdividing an edge, or on
/// a new genus-0 vertex that also takes over an old leg.
pub fn add_leg(level: &[DualGraph], label: u32) -> Vec<DualGraph> {
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |p: Plain| {
        let d = p.build();
        if seen.insert(d.canonical_form()) {
            out.push(d);
        }
    };
    for g in level {
        let p = Plain::of(g);
        let n = p.genera.len();
        for v in 0..n {
            let mut q = p.clone();
            q.legs.push((label, v));
            push(q);
        }
        for e in 0..p.edges.len() {
            let mut q = p.clone();
            let (a, b) = q.edges[e];
            q.genera.push(0);
            q.edges[e] = (a, n);
            q.edges.push((n, b));
            q.legs.push((label, n));
            push(q);
        }
        for i in 0..p.legs.len() {
            let mut q = p.clone();
            let (l, v) = q.legs[i];
            q.genera.push(0);
            q.edges.push((v, n));
            q.legs[i] = (l, n);
            q.legs.push((label, n));
            push(q);
        }
    }
    out
}

/// Second generator: base cases by hand or brute force, then [`add_leg`].
pub fn generator_b(g: u32, n: u32) -> Vec<DualGraph> {
    let (mut level, start) = match g {
        0 => {
            assert!(n >= 3);
            (vec![DualGraph::build(&[0], &[], &[(1, 0), (2, 0), (3, 0)]).unwrap()], 3)
        }
        1 => {
            assert!(n >= 1);
            (
                vec![
                    DualGraph::build(&[1], &[], &[(1, 0)]).unwrap(),
                    DualGraph::build(&[0], &[(0, 0)], &[(1, 0)]).unwrap(),
                ],
                1,
            )
        }
        _ => (brute_closed(g), 0),
    };
    for k in start..n {
        level = add_leg(&level, k + 1);
    }
    level
}

/// Stable trees with `m` labeled leaves by inserting leaves one at a time,
/// each tree given by its set of splits (the side without leaf 0).
pub fn leaf_insertion_trees(m: usize) -> Vec<BTreeSet<u64>> {
    if m < 3 {
        return Vec::new();
    }
    // (vertex count, edges, vertex of each leaf)
    type Tree = (usize, Vec<(usize, usize)>, Vec<usize>);
    let mut level: Vec<Tree> = vec![(1, Vec::new(), vec![0, 0, 0])];
    for _ in 3..m {
        let mut seen: HashSet<BTreeSet<u64>> = HashSet::new();
        let mut next = Vec::new();
        let mut push = |t: Tree| {
            if seen.insert(tree_splits(&t.1, &t.2, t.0)) {
                next.push(t);
            }
        };
        for (nv, edges, leaves) in &level {
            for v in 0..*nv {
                let mut l = leaves.clone();
                l.push(v);
                push((*nv, edges.clone(), l));
            }
            for e in 0..edges.len() {
                let (a, b) = edges[e];
                let mut es = edges.clone();
                es[e] = (a, *nv);
                es.push((*nv, b));
                let mut l = leaves.clone();
                l.push(*nv);
                push((nv + 1, es, l));
            }
            for i in 0..leaves.len() {
                let mut es = edges.clone();
                es.push((leaves[i], *nv));
                let mut l = leaves.clone();
                l[i] = *nv;
                l.push(*nv);
                push((nv + 1, es, l));
            }
        }
        level = next;
    }
    level.iter().map(|t| tree_splits(&t.1, &t.2, t.0)).collect()
}

fn tree_splits(edges: &[(usize, usize)], leaves: &[usize], nv: usize) -> BTreeSet<u64> {
    let full = (1u64 << leaves.len()) - 1;
    (0..edges.len())
        .map(|e| {
            let (a, b) = edges[e];
            let mut seen = vec![false; nv];
            seen[a] = true;
            seen[b] = true;
            let mut stack = vec![b];
            while let Some(v) = stack.pop() {
                for (f, &(x, y)) in edges.iter().enumerate() {
                    if f == e {
                        continue;
                    }
                    for (s, t) in [(x, y), (y, x)] {
                        if s == v && !seen[t] {
                            seen[t] = true;
                            stack.push(t);
                        }
                    }
                }
            }
            let side =
                leaves.iter().enumerate().filter(|&(_, &v)| seen[v] && v != a).fold(0u64, |m, (i, _)| m | 1 << i);
            if side & 1 == 1 {
                full & !side
            } else {
                side
            }
        })
        .collect()
}

/// 𝓕 by definition: the union of every vertex set that spans a tree of
/// leg-free genus-0 vertices of valence at least 3, with nonempty
/// complement, meeting each complement component in exactly one edge.
pub fn brute_f(g: &DualGraph) -> Vec<usize> {
    let p = Plain::of(g);
    let n = p.genera.len();
    let rational: Vec<usize> =
        (0..n).filter(|&v| p.genera[v] == 0 && !p.legs.iter().any(|&(_, w)| w == v) && p.valence(v) >= 3).collect();
    let mut union = vec![false; n];
    for mask in 1u64..(1 << rational.len()) {
        let s: Vec<usize> = (0..rational.len()).filter(|&i| mask >> i & 1 == 1).map(|i| rational[i]).collect();
        if s.len() == n {
            continue;
        }
        let mut inside = vec![false; n];
        for &v in &s {
            inside[v] = true;
        }
        let internal: Vec<(usize, usize)> = p.edges.iter().copied().filter(|&(a, b)| inside[a] && inside[b]).collect();
        if internal.len() + 1 != s.len() || !subset_connected(&s, &internal) {
            continue;
        }
        // components of the complement and how often each is reached
        let outside: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
        let mut comp = vec![usize::MAX; n];
        let mut k = 0;
        for &s0 in &outside {
            if comp[s0] != usize::MAX {
                continue;
            }
            comp[s0] = k;
            let mut stack = vec![s0];
            while let Some(v) = stack.pop() {
                for &(a, b) in &p.edges {
                    for (x, y) in [(a, b), (b, a)] {
                        if x == v && !inside[y] && comp[y] == usize::MAX {
                            comp[y] = k;
                            stack.push(y);
                        }
                    }
                }
            }
            k += 1;
        }
        let mut hits = vec![0; k];
        for &(a, b) in &p.edges {
            if inside[a] != inside[b] {
                hits[comp[if inside[a] { b } else { a }]] += 1;
            }
        }
        if hits.iter().all(|&h| h == 1) {
            for &v in &s {
                union[v] = true;
            }
        }
    }
    (0..n).filter(|&v| union[v]).collect()
}

fn subset_connected(s: &[usize], edges: &[(usize, usize)]) -> bool {
    let mut reached: BTreeSet<usize> = BTreeSet::from([s[0]]);
    loop {
        let before = reached.len();
        for &(a, b) in edges {
            if reached.contains(&a) || reached.contains(&b) {
                reached.insert(a);
                reached.insert(b);
            }
        }
        if reached.len() == before {
            return reached.len() == s.len();
        }
    }
}

/// Number of stable trees with `m` leaves by the leaf-insertion oracle.
pub fn tree_count(m: usize) -> usize {
    static CACHE: OnceLock<Mutex<HashMap<usize, usize>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&c) = cache.lock().unwrap().get(&m) {
        return c;
    }
    let c = leaf_insertion_trees(m).len();
    cache.lock().unwrap().insert(m, c);
    c
}
