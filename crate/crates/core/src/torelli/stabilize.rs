use crate::graph::DualGraph;

/// Mutable edge-list form used while contracting.
struct Work {
    ids: Vec<u32>,
    genus: Vec<u32>,
    alive: Vec<bool>,
    edges: Vec<Option<(usize, usize)>>,
}

impl Work {
    fn of(g: &DualGraph) -> Self {
        Work {
            ids: g.vertex_ids().to_vec(),
            genus: g.genera().to_vec(),
            alive: vec![true; g.num_vertices()],
            edges: (0..g.num_edges()).map(|e| Some(g.edge_endpoints(e))).collect(),
        }
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (e, x) in self.edges.iter().enumerate() {
            if let Some((a, b)) = *x {
                if a == v {
                    out.push(e);
                }
                if b == v {
                    out.push(e);
                }
            }
        }
        out
    }

    fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Genus-0 vertices that are rational tails or bridges: valence 1, or
    /// valence 2 other than a vertex whose only edge is one loop.
    fn candidates(&self) -> Vec<usize> {
        if self.alive_count() <= 1 {
            return Vec::new();
        }
        (0..self.alive.len())
            .filter(|&v| self.alive[v] && self.genus[v] == 0)
            .filter(|&v| {
                let inc = self.incident(v);
                inc.len() == 1 || (inc.len() == 2 && inc[0] != inc[1])
            })
            .collect()
    }

    fn contract(&mut self, v: usize) {
        let inc = self.incident(v);
        let other = |e: usize| {
            let (a, b) = self.edges[e].expect("incident edges are alive");
            if a == v {
                b
            } else {
                a
            }
        };
        if inc.len() == 2 {
            let (a, b) = (other(inc[0]), other(inc[1]));
            self.edges[inc[0]] = Some((a, b));
            self.edges[inc[1]] = None;
        } else {
            self.edges[inc[0]] = None;
        }
        self.alive[v] = false;
    }

    fn finish(self) -> DualGraph {
        let alive: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let vertices: Vec<(u32, u32)> = alive.iter().map(|&v| (self.ids[v], self.genus[v])).collect();
        let mut halfedges = Vec::new();
        let mut edges = Vec::new();
        for (u, v) in self.edges.into_iter().flatten() {
            let h = halfedges.len() as u32;
            halfedges.push((h, self.ids[u]));
            halfedges.push((h + 1, self.ids[v]));
            edges.push((h, h + 1));
        }
        DualGraph::from_parts(&vertices, &halfedges, &edges, &[]).expect("stabilization keeps graphs valid")
    }
}

/// Contracts rational tails and bridges of a connected leg-free graph
/// until none remain, choosing the first candidate each time.
///
/// Unpaired half-edges are dropped. Surviving vertices keep their ids;
/// half-edges are renumbered.
pub fn stabilize(g: &DualGraph) -> DualGraph {
    stabilize_with(g, |_| 0)
}

/// [`stabilize`] with `choose` picking which candidate (by position in the
/// given list) to contract next.
pub fn stabilize_with(g: &DualGraph, mut choose: impl FnMut(&[usize]) -> usize) -> DualGraph {
    let mut w = Work::of(&g.bare());
    loop {
        let c = w.candidates();
        if c.is_empty() {
            return w.finish();
        }
        let v = c[choose(&c).min(c.len() - 1)];
        w.contract(v);
    }
}
