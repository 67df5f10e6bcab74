mod common;

use common::*;
use proptest::prelude::*;
use torelli_graphs::assignment::{assignment_f, rational_multibridges, BridgeClass};
use torelli_graphs::contraction::{classify_axis_points, z_contract, AxisGraph};
use torelli_graphs::enumerate::contract_edges;
use torelli_graphs::graph::io::GraphJson;
use torelli_graphs::torelli::{
    c1_equivalent, c1_sets, polystable_key, pst, stabilize, stabilize_with, torelli_key, PolystableGraph,
};
use torelli_graphs::DualGraph;

/// Connected graphs: a random spanning tree plus extra edges and legs.
fn connected_graph(max_vertices: usize, max_genus: u32) -> impl Strategy<Value = Plain> {
    (1..=max_vertices)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0..=max_genus, n),
                prop::collection::vec(any::<prop::sample::Index>(), n - 1),
                prop::collection::vec((0..n, 0..n), 0..4),
                prop::collection::vec(0..n, 0..4),
            )
        })
        .prop_map(|(genera, parents, extra, legs)| {
            let mut edges: Vec<(usize, usize)> =
                parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
            edges.extend(extra);
            let legs = legs.into_iter().enumerate().map(|(i, v)| (i as u32 + 1, v)).collect();
            Plain { genera, edges, legs }
        })
}

fn permuted(p: &Plain, seed: u64) -> Plain {
    let n = p.genera.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    let mut genera = vec![0; n];
    for v in 0..n {
        genera[perm[v]] = p.genera[v];
    }
    Plain {
        genera,
        edges: p.edges.iter().rev().map(|&(a, b)| (perm[b], perm[a])).collect(),
        legs: p.legs.iter().map(|&(l, v)| (l, perm[v])).collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_an_isomorphism_invariant(p in connected_graph(6, 2), seed in any::<u64>()) {
        let g = p.build();
        let h = permuted(&p, seed).build();
        prop_assert_eq!(g.canonical_form(), h.canonical_form());
        prop_assert_eq!(brute_key(&g), brute_key(&h));
    }

    #[test]
    fn canonical_form_agrees_with_brute_force(a in connected_graph(5, 1), b in connected_graph(5, 1)) {
        let (g, h) = (a.build(), b.build());
        prop_assert_eq!(g.canonical_form() == h.canonical_form(), brute_key(&g) == brute_key(&h));
    }

    #[test]
    fn automorphisms_fix_legs_and_genus(p in connected_graph(6, 1)) {
        let g = p.build();
        let auts = g.vertex_automorphisms();
        prop_assert_eq!(auts.len(), brute_vertex_automorphisms(&g));
        for s in &auts {
            for v in 0..g.num_vertices() {
                prop_assert_eq!(g.vertex_genus(v), g.vertex_genus(s[v]));
                prop_assert_eq!(g.legs_at(v), g.legs_at(s[v]));
            }
        }
    }

    #[test]
    fn bridges_match_deletion(p in connected_graph(7, 1)) {
        let g = p.build();
        prop_assert_eq!(g.separating_edges(), naive_bridges(&g));
    }

    #[test]
    fn normalization_reglues(p in connected_graph(6, 1), mask in any::<u16>()) {
        let g = p.build();
        let cut: Vec<usize> = (0..g.num_edges()).filter(|&e| mask >> (e % 16) & 1 == 1).collect();
        let pieces = g.normalize_at(&cut).unwrap();
        let total: u32 = pieces.iter().map(|x| x.graph.genus()).sum();
        let glued = DualGraph::reglue(&pieces).unwrap();
        prop_assert_eq!(glued.canonical_form(), g.canonical_form());
        prop_assert!(total <= g.genus());
    }

    #[test]
    fn contraction_preserves_genus_and_legs(p in connected_graph(6, 2), mask in any::<u16>()) {
        let g = p.build();
        let subset: Vec<usize> = (0..g.num_edges()).filter(|&e| mask >> (e % 16) & 1 == 1).collect();
        let c = contract_edges(&g, &subset).unwrap();
        prop_assert_eq!(c.genus(), g.genus());
        let labels = |x: &DualGraph| x.legs().into_iter().map(|(l, _)| l).collect::<Vec<_>>();
        prop_assert_eq!(labels(&c), labels(&g));
    }

    #[test]
    fn z_contract_preserves_genus(p in connected_graph(6, 1), mask in any::<u8>()) {
        let g = p.build();
        let z: Vec<usize> = (0..g.num_vertices()).filter(|&v| mask >> v & 1 == 1).collect();
        if let Ok(a) = z_contract(&g, &z) {
            prop_assert_eq!(a.genus(), g.genus());
            let c = classify_axis_points(&a);
            prop_assert!(!c.is_separating_axis_like || c.is_quasi_separating_axis_like);
            let back = AxisGraph::from_json_str(&a.to_json_string()).unwrap();
            prop_assert_eq!(back.canonical_form(), a.canonical_form());
        }
    }

    #[test]
    fn stabilization_ignores_order(p in connected_graph(7, 1), seed in any::<u64>()) {
        let g = p.build();
        let reference = stabilize(&g);
        let mut s = seed;
        let other = stabilize_with(&g, |c| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            (s >> 33) as usize % c.len()
        });
        prop_assert_eq!(other.canonical_form(), reference.canonical_form());
        prop_assert_eq!(reference.genus(), g.genus());
    }

    #[test]
    fn pst_ignores_bridges_tails_and_labels(p in connected_graph(5, 2), e in any::<prop::sample::Index>(), v in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let g = p.build();
        prop_assume!(g.genus() > 0);
        let key = polystable_key(&pst(&g)).unwrap();
        let n = p.genera.len();
        if !p.edges.is_empty() {
            // genus-0 vertex subdividing an edge
            let mut q = p.clone();
            let i = e.index(q.edges.len());
            let (a, b) = q.edges[i];
            q.genera.push(0);
            q.edges[i] = (a, n);
            q.edges.push((n, b));
            prop_assert_eq!(&polystable_key(&pst(&q.build())).unwrap(), &key);
        }
        // separating rational tree: a genus-0 vertex carrying two new leaves
        let mut q = p.clone();
        let at = v.index(n);
        q.genera.extend([0, 0, 0]);
        q.edges.extend([(at, n), (n, n + 1), (n, n + 2)]);
        prop_assert_eq!(&polystable_key(&pst(&q.build())).unwrap(), &key);
        // relabeled legs
        let mut q = p.clone();
        let k = q.legs.len() as u32;
        for (l, _) in q.legs.iter_mut() {
            *l = k + 1 - *l;
        }
        prop_assert_eq!(&polystable_key(&pst(&permuted(&q, seed).build())).unwrap(), &key);
    }

    #[test]
    fn pst_is_idempotent(p in connected_graph(6, 2)) {
        let first = pst(&p.build());
        prop_assume!(!first.is_empty());
        let again = pst(&first.union().unwrap());
        prop_assert_eq!(polystable_key(&first).unwrap(), polystable_key(&again).unwrap());
        prop_assert_eq!(first.components().len(), again.components().len());
    }

    #[test]
    fn c1_sets_partition_and_are_well_defined(p in connected_graph(5, 1)) {
        let g = p.build();
        prop_assume!(g.separating_edges().is_empty());
        let part = c1_sets(&g).unwrap();
        let mut all: Vec<usize> = part.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.num_edges()).collect::<Vec<_>>());
        for s in &part.blocks {
            for &q in s {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != q).collect();
                prop_assert_eq!(naive_bridges_without(&g, q), rest);
            }
        }
    }

    #[test]
    fn isomorphic_graphs_are_c1_equivalent(p in connected_graph(5, 2), seed in any::<u64>()) {
        let g = p.build();
        prop_assume!(g.genus() > 0);
        let a = pst(&g);
        let b = pst(&permuted(&p, seed).build());
        prop_assert!(c1_equivalent(&a, &b).unwrap().is_some());
        prop_assert!(c1_equivalent(&b, &a).unwrap().is_some());
        prop_assert_eq!(torelli_key(&g).unwrap(), polystable_key(&b).unwrap());
    }

    #[test]
    fn f_is_automorphism_invariant_and_separating(p in connected_graph(6, 1)) {
        let g = p.build();
        let f = assignment_f(&g);
        for s in g.vertex_automorphisms() {
            let mut image: Vec<usize> = f.iter().map(|&v| s[v]).collect();
            image.sort_unstable();
            prop_assert_eq!(&image, &f);
        }
        for b in rational_multibridges(&g).bridges {
            let inside_f = b.vertices.iter().all(|v| f.contains(v));
            prop_assert_eq!(inside_f, b.class == BridgeClass::Separating);
        }
    }

    #[test]
    fn graph_json_round_trips(p in connected_graph(6, 2)) {
        let g = p.build();
        let text = g.to_json_string();
        let back = DualGraph::from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        let _: GraphJson = serde_json::from_str(&text).unwrap();
    }
}

#[test]
fn c1_equivalence_is_an_equivalence_on_small_catalogs() {
    for (g, n) in [(2, 0), (1, 2), (2, 1), (1, 3)] {
        let ps: Vec<PolystableGraph> = catalog(g, n).graphs().iter().map(pst).collect();
        let k = ps.len();
        let eq: Vec<Vec<bool>> =
            ps.iter().map(|a| ps.iter().map(|b| c1_equivalent(a, b).unwrap().is_some()).collect()).collect();
        for i in 0..k {
            assert!(eq[i][i]);
            for j in 0..k {
                assert_eq!(eq[i][j], eq[j][i]);
                for l in 0..k {
                    assert!(!(eq[i][j] && eq[j][l]) || eq[i][l]);
                }
            }
        }
    }
}

#[test]
fn torelli_keys_refine_genus() {
    let mut seen = std::collections::HashMap::new();
    for (g, n) in [(1, 1), (1, 2), (2, 0), (2, 1), (3, 0)] {
        for x in catalog(g, n).graphs() {
            let previous = seen.insert(torelli_key(x).unwrap(), g);
            assert!(previous.is_none_or(|h| h == g));
        }
    }
}
