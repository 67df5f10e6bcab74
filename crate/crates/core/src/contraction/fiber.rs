use serde::{Deserialize, Serialize};

use super::{classify_axis_points, stable_trees, AxisGraph, LeafTree};
use crate::error::ContractionError;
use crate::graph::DualGraph;

/// One factor `M̄_{0,m}` of the fiber, for an m-axis point with `m ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberFactor {
    pub point: usize,
    pub m: usize,
    /// Number of boundary strata of `M̄_{0,m}`.
    pub trees: usize,
}

/// A stable graph over the axis graph: component `i` is vertex `i`, and
/// each m-axis point is replaced by a leaf-labeled tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    pub graph: DualGraph,
    /// Index into `stable_trees(m)` per factor.
    pub choice: Vec<usize>,
    /// Vertices of the inserted tree per factor.
    pub inserted: Vec<Vec<usize>>,
}

impl FiberGraph {
    /// All inserted-tree vertices, sorted.
    pub fn inserted_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.inserted.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberStrata {
    pub factors: Vec<FiberFactor>,
    /// Every combination of trees, last factor varying fastest.
    pub graphs: Vec<FiberGraph>,
    /// Some axis point is neither separating nor quasi-separating.
    pub moduli_positive: bool,
}

/// The m-axis points (`m ≥ 3`) as fiber factors, after checking that
/// every point is a node or an axis point.
fn factors(a: &AxisGraph) -> Result<Vec<FiberFactor>, ContractionError> {
    let mut out = Vec::new();
    for (p, point) in a.points().iter().enumerate() {
        if !point.legs.is_empty() {
            return Err(ContractionError::MarkedSingularity(p));
        }
        if point.genus > 0 || point.m() < 2 {
            return Err(ContractionError::NotAxisPoint { point: p, genus: point.genus, m: point.m() });
        }
        if point.m() >= 3 {
            out.push(FiberFactor { point: p, m: point.m(), trees: stable_trees(point.m()).len() });
        }
    }
    Ok(out)
}

/// Number of fiber graphs, the product of the factor sizes.
pub fn fiber_size(a: &AxisGraph) -> Result<usize, ContractionError> {
    Ok(factors(a)?.iter().map(|f| f.trees).product())
}

/// The fiber graph for one choice of tree per factor.
pub fn fiber_graph(a: &AxisGraph, choice: &[usize]) -> Result<FiberGraph, ContractionError> {
    let factors = factors(a)?;
    if choice.len() != factors.len() {
        return Err(ContractionError::Malformed(format!(
            "{} tree choices for {} axis points",
            choice.len(),
            factors.len()
        )));
    }
    let trees: Vec<_> = factors.iter().map(|f| stable_trees(f.m)).collect();
    let mut chosen: Vec<&LeafTree> = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        chosen.push(trees[i].get(choice[i]).ok_or_else(|| {
            ContractionError::Malformed(format!("tree {} out of range for point {}", choice[i], f.point))
        })?);
    }
    Ok(assemble(a, &factors, &chosen, choice.to_vec()))
}

fn assemble(a: &AxisGraph, factors: &[FiberFactor], chosen: &[&LeafTree], choice: Vec<usize>) -> FiberGraph {
    let mut genera: Vec<u32> = a.components().iter().map(|c| c.genus).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut inserted = Vec::with_capacity(factors.len());
    let mut factor_of = vec![usize::MAX; a.points().len()];
    for (i, f) in factors.iter().enumerate() {
        factor_of[f.point] = i;
    }
    for (p, point) in a.points().iter().enumerate() {
        if factor_of[p] == usize::MAX {
            edges.push((point.slots[0].0, point.slots[1].0));
            continue;
        }
        let tree = chosen[factor_of[p]];
        let base = genera.len();
        genera.extend(std::iter::repeat_n(0, tree.num_vertices()));
        inserted.push((base..genera.len()).collect());
        edges.extend(tree.edges().iter().map(|&(u, v)| (base + u, base + v)));
        for (leaf, &(comp, _)) in point.slots.iter().enumerate() {
            edges.push((base + tree.leaf_vertex(leaf), comp));
        }
    }
    let legs: Vec<(u32, usize)> =
        a.components().iter().enumerate().flat_map(|(i, c)| c.legs.iter().map(move |&l| (l, i))).collect();
    let graph = DualGraph::build(&genera, &edges, &legs).expect("fiber graphs are valid graphs");
    FiberGraph { graph, choice, inserted }
}

/// Every stable graph over `a`: each m-axis point (`m ≥ 3`) is replaced by
/// each stable genus-0 tree whose `m` leaves are glued to the point's
/// branches in slot order; nodes stay edges.
pub fn fiber_strata(a: &AxisGraph) -> Result<FiberStrata, ContractionError> {
    let factors = factors(a)?;
    let trees: Vec<_> = factors.iter().map(|f| stable_trees(f.m)).collect();
    let total: usize = factors.iter().map(|f| f.trees).product();
    let mut graphs = Vec::with_capacity(total);
    let mut choice = vec![0usize; factors.len()];
    for _ in 0..total {
        let chosen: Vec<&LeafTree> = choice.iter().enumerate().map(|(i, &c)| &trees[i][c]).collect();
        graphs.push(assemble(a, &factors, &chosen, choice.clone()));
        for i in (0..factors.len()).rev() {
            choice[i] += 1;
            if choice[i] < factors[i].trees {
                break;
            }
            choice[i] = 0;
        }
    }
    let moduli_positive = !classify_axis_points(a).is_quasi_separating_axis_like;
    Ok(FiberStrata { factors, graphs, moduli_positive })
}
