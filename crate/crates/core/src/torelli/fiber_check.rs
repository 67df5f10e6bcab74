use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{polystable_key, pst, TorelliKey};
use crate::contraction::{classify_axis_points, fiber_strata, AxisGraph};
use crate::error::TorelliError;

/// Why the Torelli image is not constant on the fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VariesReason {
    /// An inserted tree vertex survives in the polystable reduction with
    /// valence at least 4, so it carries moduli.
    Remnant { graph: usize, vertex: usize, valence: usize },
    /// Two fiber graphs with different keys; `first` is graph 0.
    KeyMismatch { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FiberVerdict {
    Constant { key: TorelliKey },
    Varies { reason: VariesReason },
}

impl FiberVerdict {
    pub fn is_constant(&self) -> bool {
        matches!(self, FiberVerdict::Constant { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCheck {
    pub verdict: FiberVerdict,
    /// Number of fiber graphs examined.
    pub graphs: usize,
    /// Every m-axis point with `m ≥ 3` is quasi-separating.
    pub quasi_separating: bool,
}

impl FiberCheck {
    /// The verdict agrees with the quasi-separating criterion.
    pub fn matches_criterion(&self) -> bool {
        self.verdict.is_constant() == self.quasi_separating
    }
}

/// Decides whether the Torelli key is constant over every stable graph
/// contracting to `a`.
pub fn fiber_constant(a: &AxisGraph) -> Result<FiberCheck, TorelliError> {
    let class = classify_axis_points(a);
    if !class.is_axis_like {
        let p = class.points.iter().position(|p| p.genus > 0 || p.class == crate::contraction::PointClass::NonAxis);
        return Err(TorelliError::NotAxisLike(match p {
            Some(p) => format!("singular point {p} is not of type (0, m)"),
            None => "some singular point is not of type (0, m)".into(),
        }));
    }
    if a.genus() == 0 {
        return Err(TorelliError::GenusZero);
    }
    let strata = fiber_strata(a)?;
    let results: Vec<(TorelliKey, Option<(usize, usize)>)> = strata
        .graphs
        .par_iter()
        .map(|fg| {
            let p = pst(&fg.graph);
            let inserted = fg.inserted_vertices();
            let remnant = p.components().iter().find_map(|c| {
                (0..c.num_vertices()).find_map(|v| {
                    let id = c.vertex_id(v) as usize;
                    (c.vertex_genus(v) == 0 && c.valence(v) >= 4 && inserted.binary_search(&id).is_ok())
                        .then(|| (id, c.valence(v)))
                })
            });
            polystable_key(&p).map(|k| (k, remnant))
        })
        .collect::<Result<_, _>>()?;
    let verdict = scan(&results);
    Ok(FiberCheck { verdict, graphs: results.len(), quasi_separating: class.is_quasi_separating_axis_like })
}

fn scan(results: &[(TorelliKey, Option<(usize, usize)>)]) -> FiberVerdict {
    let first = &results[0].0;
    for (i, (key, remnant)) in results.iter().enumerate() {
        if let Some(&(vertex, valence)) = remnant.as_ref() {
            return FiberVerdict::Varies { reason: VariesReason::Remnant { graph: i, vertex, valence } };
        }
        if key != first {
            return FiberVerdict::Varies { reason: VariesReason::KeyMismatch { first: 0, second: i } };
        }
    }
    FiberVerdict::Constant { key: first.clone() }
}
