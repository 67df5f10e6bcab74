use serde::{Deserialize, Serialize};

use super::PolystableGraph;
use crate::error::TorelliError;
use crate::graph::DualGraph;

/// Partition of the edges of a bridgeless connected graph into C1-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Partition {
    /// Sorted blocks of edge indices, ordered by smallest edge.
    pub blocks: Vec<Vec<usize>>,
    /// Block index of every edge.
    pub block_of: Vec<usize>,
}

/// C1-sets: `S(p) = {p} ∪ separating_edges(Γ ∖ p)`, checked to be
/// constant on each block.
pub fn c1_sets(g: &DualGraph) -> Result<C1Partition, TorelliError> {
    if !g.is_connected() {
        return Err(TorelliError::Disconnected);
    }
    if let Some(&e) = g.separating_edges().first() {
        return Err(TorelliError::SeparatingEdge(e));
    }
    let m = g.num_edges();
    let mut block_of = vec![usize::MAX; m];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for p in 0..m {
        let mut s = g.separating_edges_without(p);
        s.push(p);
        s.sort_unstable();
        if block_of[p] != usize::MAX {
            if blocks[block_of[p]] != s {
                return Err(TorelliError::IllDefined(p));
            }
            continue;
        }
        for &q in &s {
            if block_of[q] != usize::MAX {
                return Err(TorelliError::IllDefined(q));
            }
            block_of[q] = blocks.len();
        }
        blocks.push(s);
    }
    Ok(C1Partition { blocks, block_of })
}

/// A C1-equivalence between two polystable graphs, on their disjoint
/// unions: vertex, block and half-edge bijections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Witness {
    pub vertices: Vec<usize>,
    pub blocks: Vec<usize>,
    pub halfedges: Vec<usize>,
}

/// Disjoint union of the components with C1-sets in union edge indices.
pub(crate) struct Flat {
    pub(crate) graph: DualGraph,
    pub(crate) blocks: Vec<Vec<usize>>,
    pub(crate) block_of: Vec<usize>,
}

impl Flat {
    pub(crate) fn of(p: &PolystableGraph) -> Result<Flat, TorelliError> {
        let graph = p.union().ok_or(TorelliError::GenusZero)?;
        let mut blocks = Vec::new();
        let mut offset = 0;
        for c in p.components() {
            for b in c1_sets(c)?.blocks {
                blocks.push(b.into_iter().map(|e| e + offset).collect());
            }
            offset += c.num_edges();
        }
        let mut block_of = vec![0; graph.num_edges()];
        for (i, b) in blocks.iter().enumerate() {
            for &e in b {
                block_of[e] = i;
            }
        }
        Ok(Flat { graph, blocks, block_of })
    }

    /// Half-edges of `v` lying on edges of block `b`, sorted.
    fn halfedges_in(&self, v: usize, b: usize) -> Vec<usize> {
        self.graph
            .halfedges_at(v)
            .into_iter()
            .filter(|&h| self.graph.halfedge_edge(h).is_some_and(|e| self.block_of[e] == b))
            .collect()
    }

    /// `counts[v][b]`: half-edges of `v` in block `b`.
    pub(crate) fn counts(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; self.blocks.len()]; self.graph.num_vertices()];
        for e in 0..self.graph.num_edges() {
            let (u, v) = self.graph.edge_endpoints(e);
            out[u][self.block_of[e]] += 1;
            out[v][self.block_of[e]] += 1;
        }
        out
    }
}

/// Decides C1-equivalence directly: a genus-preserving vertex bijection
/// and a block bijection under which every vertex has the same number of
/// half-edges in corresponding blocks.
pub fn c1_equivalent(a: &PolystableGraph, b: &PolystableGraph) -> Result<Option<C1Witness>, TorelliError> {
    let (fa, fb) = (Flat::of(a)?, Flat::of(b)?);
    let n = fa.graph.num_vertices();
    if n != fb.graph.num_vertices()
        || fa.graph.num_edges() != fb.graph.num_edges()
        || fa.blocks.len() != fb.blocks.len()
    {
        return Ok(None);
    }
    let (ca, cb) = (fa.counts(), fb.counts());
    let signature = |f: &Flat, counts: &[Vec<usize>], v: usize| {
        let mut s: Vec<(usize, usize)> =
            (0..f.blocks.len()).filter(|&b| counts[v][b] > 0).map(|b| (f.blocks[b].len(), counts[v][b])).collect();
        s.sort_unstable();
        (f.graph.vertex_genus(v), f.graph.valence(v), s)
    };
    let sa: Vec<_> = (0..n).map(|v| signature(&fa, &ca, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| signature(&fb, &cb, v)).collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut found = None;
    search(0, &sa, &sb, &ca, &cb, &mut phi, &mut used, &mut found);
    let Some((phi, beta)) = found else {
        return Ok(None);
    };
    let mut halfedges = vec![usize::MAX; fa.graph.num_halfedges()];
    for v in 0..n {
        for (bi, &bj) in beta.iter().enumerate() {
            for (h, k) in fa.halfedges_in(v, bi).into_iter().zip(fb.halfedges_in(phi[v], bj)) {
                halfedges[h] = k;
            }
        }
    }
    Ok(Some(C1Witness { vertices: phi, blocks: beta, halfedges }))
}

type Found = Option<(Vec<usize>, Vec<usize>)>;

#[allow(clippy::too_many_arguments)]
fn search<S: PartialEq>(
    v: usize,
    sa: &[S],
    sb: &[S],
    ca: &[Vec<usize>],
    cb: &[Vec<usize>],
    phi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Found,
) {
    if found.is_some() {
        return;
    }
    let n = sa.len();
    if v == n {
        if let Some(beta) = match_blocks(ca, cb, phi) {
            *found = Some((phi.clone(), beta));
        }
        return;
    }
    for w in 0..n {
        if !used[w] && sa[v] == sb[w] {
            used[w] = true;
            phi[v] = w;
            search(v + 1, sa, sb, ca, cb, phi, used, found);
            used[w] = false;
            if found.is_some() {
                return;
            }
        }
    }
}

/// Block bijection making the count columns agree under `phi`, if any.
fn match_blocks(ca: &[Vec<usize>], cb: &[Vec<usize>], phi: &[usize]) -> Option<Vec<usize>> {
    let n = phi.len();
    let k = ca.first().map_or(0, Vec::len);
    let column_a = |b: usize| {
        let mut c = vec![0; n];
        for v in 0..n {
            c[phi[v]] = ca[v][b];
        }
        c
    };
    let column_b = |b: usize| (0..n).map(|w| cb[w][b]).collect::<Vec<_>>();
    let mut cols_b: Vec<(Vec<usize>, usize)> = (0..k).map(|b| (column_b(b), b)).collect();
    cols_b.sort_unstable();
    let mut taken = vec![false; k];
    let mut beta = vec![0; k];
    for b in 0..k {
        let c = column_a(b);
        let start = cols_b.partition_point(|(x, _)| *x < c);
        let slot = (start..k).take_while(|&i| cols_b[i].0 == c).find(|&i| !taken[i])?;
        taken[slot] = true;
        beta[b] = cols_b[slot].1;
    }
    Some(beta)
}
