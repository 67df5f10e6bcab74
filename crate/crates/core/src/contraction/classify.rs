use serde::{Deserialize, Serialize};

use super::AxisGraph;
use crate::assignment::BridgeClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    Node,
    Separating,
    QuasiSeparating,
    General,
    /// Positive genus, a single branch, or marked points on the point.
    NonAxis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisPointClass {
    pub point: usize,
    pub genus: u32,
    pub m: usize,
    pub class: PointClass,
    /// Branches per component of the normalization at the point, in
    /// decreasing order.
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisClassification {
    pub points: Vec<AxisPointClass>,
    /// Every singular point is a node or an m-axis point.
    pub is_axis_like: bool,
    pub is_separating_axis_like: bool,
    pub is_quasi_separating_axis_like: bool,
}

/// Classifies every singular point by normalizing the axis graph at that
/// point alone.
pub fn classify_axis_points(a: &AxisGraph) -> AxisClassification {
    let mut points = Vec::with_capacity(a.points().len());
    for (p, point) in a.points().iter().enumerate() {
        let parts = a.normalization_at(p);
        let mut part_of = vec![0; a.components().len()];
        for (i, part) in parts.iter().enumerate() {
            for &c in part {
                part_of[c] = i;
            }
        }
        let mut counts = vec![0usize; parts.len()];
        for &(c, _) in &point.slots {
            counts[part_of[c]] += 1;
        }
        let mut profile: Vec<usize> = counts.into_iter().filter(|&k| k > 0).collect();
        profile.sort_unstable_by(|x, y| y.cmp(x));
        let m = point.m();
        let class = if point.genus > 0 || m < 2 || !point.legs.is_empty() {
            PointClass::NonAxis
        } else if m == 2 {
            PointClass::Node
        } else {
            match BridgeClass::of_profile(&profile) {
                BridgeClass::Separating => PointClass::Separating,
                BridgeClass::QuasiSeparating => PointClass::QuasiSeparating,
                BridgeClass::General => PointClass::General,
            }
        };
        points.push(AxisPointClass { point: p, genus: point.genus, m, class, profile });
    }
    let is_axis_like = points.iter().all(|c| c.class != PointClass::NonAxis);
    let is_separating_axis_like =
        is_axis_like && points.iter().all(|c| matches!(c.class, PointClass::Node | PointClass::Separating));
    let is_quasi_separating_axis_like = is_axis_like && points.iter().all(|c| c.class != PointClass::General);
    AxisClassification { points, is_axis_like, is_separating_axis_like, is_quasi_separating_axis_like }
}
