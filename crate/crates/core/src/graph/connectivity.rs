use super::{DualGraph, UnionFind};

pub(super) fn components(g: &DualGraph) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..g.num_edges()).collect();
    components_with_edges(g, &all)
}

/// Components of the graph restricted to `edges`.
pub(super) fn components_with_edges(g: &DualGraph, edges: &[usize]) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut uf = UnionFind::new(n);
    for &e in edges {
        let (u, v) = g.edge_endpoints(e);
        uf.union(u, v);
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = uf.find(v);
        by_root[r].push(v);
    }
    by_root.into_iter().filter(|c| !c.is_empty()).collect()
}

/// Bridges by low-link DFS. Parallel edges are told apart by edge index, so
/// a doubled edge is never a bridge; loops never are.
pub(super) fn bridges(g: &DualGraph) -> Vec<usize> {
    bridges_skipping(g, None)
}

/// Bridges of the graph with edge `skip` deleted, in the host's edge
/// indices.
pub(super) fn bridges_skipping(g: &DualGraph, skip: Option<usize>) -> Vec<usize> {
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in 0..g.num_edges() {
        let (u, v) = g.edge_endpoints(e);
        if u != v && Some(e) != skip {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut clock = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, e) = adj[v][*next];
                *next += 1;
                if e == via {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}
