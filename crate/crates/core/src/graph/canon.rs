//! Canonical labeling of vertex-colored multigraphs by color refinement and
//! individualization.
//!
//! Graphs here have at most a dozen or so vertices, so the search tree is
//! explored without automorphism pruning. Every leaf whose encoding ties the
//! minimum differs from the canonical leaf by a vertex automorphism, which is
//! how the automorphism group is read off.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DualGraph;

/// Byte-string fingerprint of an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalKey)
    }

    /// Vertex count of the encoded graph, or `None` for malformed bytes.
    pub fn num_vertices(&self) -> Option<usize> {
        let mut n = 0usize;
        for (i, &b) in self.0.iter().enumerate().take(5) {
            n |= ((b & 0x7f) as usize) << (7 * i);
            if b & 0x80 == 0 {
                return Some(n);
            }
        }
        None
    }

    pub(crate) fn from_words(words: &[u32]) -> Self {
        let mut bytes = Vec::with_capacity(words.len() + 4);
        for &w in words {
            let mut w = w;
            loop {
                let b = (w & 0x7f) as u8;
                w >>= 7;
                if w == 0 {
                    bytes.push(b);
                    break;
                }
                bytes.push(b | 0x80);
            }
        }
        CanonicalKey(bytes)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).ok_or_else(|| serde::de::Error::custom("invalid hex key"))
    }
}

/// Undirected multigraph with loops and an ordered color per vertex.
#[derive(Clone, Debug)]
pub(crate) struct ColoredMultigraph {
    color_data: Vec<u32>,
    color_start: Vec<usize>,
    n: usize,
    mult: Vec<u32>,
}

impl ColoredMultigraph {
    pub(crate) fn new(colors: Vec<Vec<u32>>) -> Self {
        let mut color_data = Vec::new();
        let mut color_start = vec![0];
        for c in &colors {
            color_data.extend_from_slice(c);
            color_start.push(color_data.len());
        }
        Self::from_flat(color_data, color_start)
    }

    /// Colors given as one buffer; color `v` is `data[start[v]..start[v + 1]]`.
    pub(crate) fn from_flat(color_data: Vec<u32>, color_start: Vec<usize>) -> Self {
        let n = color_start.len() - 1;
        Self { color_data, color_start, n, mult: vec![0; n * n] }
    }

    pub(crate) fn color(&self, v: usize) -> &[u32] {
        &self.color_data[self.color_start[v]..self.color_start[v + 1]]
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.add_edges(u, v, 1);
    }

    pub(crate) fn add_edges(&mut self, u: usize, v: usize, k: u32) {
        self.mult[u * self.n + v] += k;
        if u != v {
            self.mult[v * self.n + u] += k;
        }
    }

    fn m(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }
}

pub(crate) struct Labeling {
    /// Canonical position of every vertex.
    pub(crate) position: Vec<usize>,
    pub(crate) key: CanonicalKey,
}

struct Search<'a> {
    g: &'a ColoredMultigraph,
    adj: Vec<Vec<(usize, u32)>>,
    best: Option<Vec<u32>>,
    best_position: Vec<usize>,
    ties: Vec<Vec<usize>>,
    collect: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a ColoredMultigraph, collect: bool) -> Self {
        let adj = (0..g.n).map(|u| (0..g.n).filter(|&v| g.m(u, v) > 0).map(|v| (v, g.m(u, v))).collect()).collect();
        Self { g, adj, best: None, best_position: Vec::new(), ties: Vec::new(), collect }
    }

    fn initial_cells(&self) -> Vec<u32> {
        let mut distinct: Vec<&[u32]> = (0..self.g.n).map(|v| self.g.color(v)).collect();
        distinct.sort_unstable();
        distinct.dedup();
        (0..self.g.n).map(|v| distinct.binary_search(&self.g.color(v)).unwrap() as u32).collect()
    }

    /// Equitable refinement; `cells` holds dense ranks and stays dense.
    fn refine(&self, cells: &mut [u32]) {
        let n = self.g.n;
        let mut count = distinct(cells);
        // signature of v: its cell, then sorted (neighbour cell, multiplicity)
        let mut buf: Vec<u32> = Vec::new();
        let mut start = vec![0usize; n + 1];
        let mut nb: Vec<(u32, u32)> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        while count < n {
            buf.clear();
            for v in 0..n {
                nb.clear();
                nb.extend(self.adj[v].iter().map(|&(u, k)| (cells[u], k)));
                nb.sort_unstable();
                buf.push(cells[v]);
                for &(c, k) in &nb {
                    buf.push(c);
                    buf.push(k);
                }
                start[v + 1] = buf.len();
            }
            let sig = |v: usize| &buf[start[v]..start[v + 1]];
            order.sort_unstable_by(|&a, &b| sig(a).cmp(sig(b)));
            let mut rank = 0;
            for i in 0..n {
                if i > 0 && sig(order[i]) != sig(order[i - 1]) {
                    rank += 1;
                }
                cells[order[i]] = rank;
            }
            let new_count = rank as usize + 1;
            if new_count == count {
                return;
            }
            count = new_count;
        }
    }

    fn run(&mut self, mut cells: Vec<u32>) {
        self.refine(&mut cells);
        let n = self.g.n;
        let mut sizes = vec![0usize; n];
        for &c in &cells {
            sizes[c as usize] += 1;
        }
        let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            self.leaf(&cells);
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| cells[v] as usize == target).collect();
        for v in members {
            let mut next: Vec<u32> =
                cells.iter().enumerate().map(|(w, &c)| 2 * c + u32::from(c as usize == target && w != v)).collect();
            densify(&mut next);
            self.run(next);
        }
    }

    fn leaf(&mut self, cells: &[u32]) {
        let n = self.g.n;
        let position: Vec<usize> = cells.iter().map(|&c| c as usize).collect();
        let mut at = vec![0; n];
        for v in 0..n {
            at[position[v]] = v;
        }
        let mut enc = Vec::with_capacity(n * (n + 1) / 2);
        for p in 0..n {
            for q in p..n {
                enc.push(self.g.m(at[p], at[q]));
            }
        }
        match &self.best {
            Some(b) if enc > *b => {}
            Some(b) if enc == *b => {
                if self.collect {
                    self.ties.push(position);
                }
            }
            _ => {
                self.best = Some(enc);
                self.best_position = position.clone();
                self.ties.clear();
                if self.collect {
                    self.ties.push(position);
                }
            }
        }
    }

    fn key(&self) -> CanonicalKey {
        let n = self.g.n;
        let mut at = vec![0; n];
        for v in 0..n {
            at[self.best_position[v]] = v;
        }
        let mut words = vec![n as u32];
        for &v in &at {
            let c = self.g.color(v);
            words.push(c.len() as u32);
            words.extend_from_slice(c);
        }
        words.extend_from_slice(self.best.as_deref().unwrap_or(&[]));
        CanonicalKey::from_words(&words)
    }
}

fn distinct(cells: &[u32]) -> usize {
    let mut v = cells.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn densify(cells: &mut [u32]) {
    let mut v = cells.to_vec();
    v.sort_unstable();
    v.dedup();
    for c in cells.iter_mut() {
        *c = v.binary_search(c).unwrap() as u32;
    }
}

pub(crate) fn canonical_labeling(g: &ColoredMultigraph) -> Labeling {
    if g.n == 0 {
        return Labeling { position: Vec::new(), key: CanonicalKey::from_words(&[0]) };
    }
    let mut s = Search::new(g, false);
    let cells = s.initial_cells();
    s.run(cells);
    let key = s.key();
    Labeling { position: s.best_position, key }
}

/// All color- and multiplicity-preserving vertex permutations, as maps
/// `σ[v]`. The identity is included.
pub(crate) fn vertex_automorphisms(g: &ColoredMultigraph) -> Vec<Vec<usize>> {
    if g.n == 0 {
        return vec![Vec::new()];
    }
    let mut s = Search::new(g, true);
    let cells = s.initial_cells();
    s.run(cells);
    let n = g.n;
    let mut at_best = vec![0; n];
    for v in 0..n {
        at_best[s.best_position[v]] = v;
    }
    let mut out: Vec<Vec<usize>> = s.ties.iter().map(|pos| (0..n).map(|v| at_best[pos[v]]).collect()).collect();
    out.sort();
    out.dedup();
    out
}

/// Automorphism group of a [`DualGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphisms {
    /// Group order, counting permutations of parallel edges, loop flips and
    /// permutations of branch points at a vertex.
    pub order: u128,
    /// The induced vertex permutations (`σ[v]`), identity included.
    pub vertex_permutations: Vec<Vec<usize>>,
    /// Generators as half-edge permutations (`σ[h]`).
    pub generators: Vec<Vec<usize>>,
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

pub(super) fn automorphisms_of(g: &DualGraph) -> Automorphisms {
    let vperms = vertex_automorphisms(&g.colored(&[]));
    let n = g.num_vertices();
    let mut order = vperms.len() as u128;
    let mut generators = Vec::new();
    let identity: Vec<usize> = (0..g.num_halfedges()).collect();
    for u in 0..n {
        for v in u..n {
            let es = g.edges_between(u, v);
            let k = es.len();
            if u == v {
                order *= factorial(k) * (1u128 << k);
                for &e in &es {
                    let [a, b] = g.edge(e);
                    let mut p = identity.clone();
                    p.swap(a, b);
                    generators.push(p);
                }
            } else {
                order *= factorial(k);
            }
            for w in es.windows(2) {
                let ([a0, b0], [a1, b1]) = (oriented(g, w[0], u), oriented(g, w[1], u));
                let mut p = identity.clone();
                p.swap(a0, a1);
                p.swap(b0, b1);
                generators.push(p);
            }
        }
        let bps: Vec<usize> = g.halfedges_at(u).into_iter().filter(|&h| g.is_branch_point(h)).collect();
        order *= factorial(bps.len());
        for w in bps.windows(2) {
            let mut p = identity.clone();
            p.swap(w[0], w[1]);
            generators.push(p);
        }
    }
    for sigma in &vperms {
        if sigma.iter().enumerate().all(|(v, &s)| v == s) {
            continue;
        }
        generators.push(lift(g, sigma));
    }
    Automorphisms { order, vertex_permutations: vperms, generators }
}

/// Half-edges of edge `e` with the one at `u` first.
fn oriented(g: &DualGraph, e: usize, u: usize) -> [usize; 2] {
    let [a, b] = g.edge(e);
    if g.halfedge_vertex(a) == u {
        [a, b]
    } else {
        [b, a]
    }
}

/// Lifts a vertex automorphism to half-edges: the k-th edge between `u, v`
/// goes to the k-th edge between `σu, σv`, legs go to the same label and
/// branch points keep their order.
fn lift(g: &DualGraph, sigma: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..g.num_halfedges()).collect();
    let n = g.num_vertices();
    for u in 0..n {
        for v in u..n {
            let src = g.edges_between(u, v);
            let dst = g.edges_between(sigma[u], sigma[v]);
            for (&e, &f) in src.iter().zip(&dst) {
                let [a, b] = oriented(g, e, u);
                let [c, d] = oriented(g, f, sigma[u]);
                p[a] = c;
                p[b] = d;
            }
        }
        let src: Vec<usize> = g.halfedges_at(u).into_iter().filter(|&h| g.is_branch_point(h)).collect();
        let dst: Vec<usize> = g.halfedges_at(sigma[u]).into_iter().filter(|&h| g.is_branch_point(h)).collect();
        for (&a, &b) in src.iter().zip(&dst) {
            p[a] = b;
        }
    }
    for (_, h) in g.legs() {
        p[h] = h;
    }
    p
}
