//! JSON format for axis graphs.
//!
//! `{"components":[{"id","genus","legs"}],"singular_points":[{"type":[g,m],"slots":[[component id, slot]],"legs"}],"genus"}`
//! with `legs` and `genus` optional on input. Slots of a component are
//! numbered from 0 and each is glued exactly once.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AxisComponent, AxisGraph, SingularPoint};
use crate::error::ContractionError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub id: u32,
    pub genus: u32,
    #[serde(default)]
    pub legs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointJson {
    #[serde(rename = "type")]
    pub kind: [u32; 2],
    pub slots: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub legs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisGraphJson {
    pub components: Vec<ComponentJson>,
    pub singular_points: Vec<SingularPointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

impl From<&AxisGraph> for AxisGraphJson {
    fn from(a: &AxisGraph) -> Self {
        AxisGraphJson {
            components: a
                .components()
                .iter()
                .map(|c| ComponentJson { id: c.id, genus: c.genus, legs: c.legs.clone() })
                .collect(),
            singular_points: a
                .points()
                .iter()
                .map(|p| SingularPointJson {
                    kind: [p.genus, p.m() as u32],
                    slots: p.slots.iter().map(|&(c, s)| [a.components()[c].id, s as u32]).collect(),
                    legs: p.legs.clone(),
                })
                .collect(),
            genus: Some(a.genus()),
        }
    }
}

impl TryFrom<&AxisGraphJson> for AxisGraph {
    type Error = ContractionError;

    fn try_from(j: &AxisGraphJson) -> Result<Self, ContractionError> {
        let index: BTreeMap<u32, usize> = j.components.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        let mut slots = vec![0usize; j.components.len()];
        let mut points = Vec::with_capacity(j.singular_points.len());
        for (p, sp) in j.singular_points.iter().enumerate() {
            if sp.kind[1] as usize != sp.slots.len() {
                return Err(ContractionError::Malformed(format!(
                    "singular point {p} has type m = {} but {} slots",
                    sp.kind[1],
                    sp.slots.len()
                )));
            }
            let mut ps = Vec::with_capacity(sp.slots.len());
            for &[id, s] in &sp.slots {
                let c = *index
                    .get(&id)
                    .ok_or_else(|| ContractionError::Malformed(format!("singular point {p} names component {id}")))?;
                slots[c] = slots[c].max(s as usize + 1);
                ps.push((c, s as usize));
            }
            points.push(SingularPoint { genus: sp.kind[0], slots: ps, legs: sp.legs.clone() });
        }
        let components = j
            .components
            .iter()
            .zip(slots)
            .map(|(c, slots)| AxisComponent { id: c.id, genus: c.genus, legs: c.legs.clone(), slots })
            .collect();
        let a = AxisGraph::new(components, points)?;
        match j.genus {
            Some(recorded) if recorded != a.genus() => {
                Err(ContractionError::GenusMismatch { recorded, computed: a.genus() })
            }
            _ => Ok(a),
        }
    }
}

impl AxisGraph {
    pub fn to_json(&self) -> AxisGraphJson {
        AxisGraphJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<AxisGraph, ContractionError> {
        let j: AxisGraphJson = serde_json::from_str(s).map_err(|e| ContractionError::Malformed(e.to_string()))?;
        AxisGraph::try_from(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("axis graph json serializes")
    }
}
