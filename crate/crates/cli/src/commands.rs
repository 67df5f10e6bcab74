use std::fmt::Write;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use torelli_graphs::assignment::{verify_extremal, AssignmentTable, Enlargement, ExtremalAssignment};
use torelli_graphs::contraction::{classify_axis_points, fiber_strata, z_contract, AxisGraph};
use torelli_graphs::torelli::{self, fiber_constant, FiberVerdict, VariesReason};
use torelli_graphs::DualGraph;

use crate::cache::{load_catalog, CatalogFile};
use crate::report::Report;
use crate::{Outcome, TypeArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<DualGraph> {
    DualGraph::from_json_str(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn read_axis(path: &Path) -> Result<AxisGraph> {
    AxisGraph::from_json_str(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn type_config(ty: &TypeArgs) -> Value {
    json!({"genus": ty.genus, "markings": ty.markings, "bound": ty.bound})
}

fn dot_all<'a>(graphs: impl IntoIterator<Item = &'a DualGraph>, prefix: &str) -> String {
    graphs.into_iter().enumerate().map(|(i, g)| g.to_dot(&format!("{prefix}{i}"))).collect()
}

struct Resolved {
    assignment: ExtremalAssignment,
    enlargements: Vec<Enlargement>,
    /// `(g, n)` of a table; `None` for `F`.
    table_type: Option<(u32, u32)>,
}

/// `F`, or a table file closed under automorphisms against the catalog of
/// its own type.
fn resolve_assignment(source: &str, bound: u32, cache: bool) -> Result<Resolved> {
    if source == "F" {
        return Ok(Resolved {
            assignment: ExtremalAssignment::separating_bridges(),
            enlargements: Vec::new(),
            table_type: None,
        });
    }
    let path = Path::new(source);
    if !path.exists() {
        bail!("assignment `{source}` is neither `F` nor an existing table file");
    }
    let table = AssignmentTable::from_json_str(&read(path)?).with_context(|| source.to_string())?;
    let ty = (table.genus(), table.markings());
    let catalog = load_catalog(ty.0, ty.1, bound, cache)?;
    let (closed, grown) = table.closed_under_automorphisms(&catalog).with_context(|| source.to_string())?;
    Ok(Resolved { assignment: ExtremalAssignment::from_table(closed), enlargements: grown, table_type: Some(ty) })
}

/// With `out`, the graphs go to the catalog file and the report names it.
pub fn enumerate(ty: &TypeArgs, out: Option<&Path>, cache: bool) -> Result<Outcome> {
    let catalog = load_catalog(ty.genus, ty.markings, ty.bound, cache)?;
    let file = CatalogFile::of(&catalog);
    let payload = match out {
        Some(path) => json!({"count": catalog.len(), "catalog": path}),
        None => json!({"count": catalog.len(), "graphs": file.graphs}),
    };
    Ok(Outcome {
        report: Report::new("enumerate", type_config(ty), payload),
        dot: dot_all(catalog.graphs(), "g"),
        catalog: Some(serde_json::to_string_pretty(&file)? + "\n"),
        exit: 0,
    })
}

pub fn verify_assignment(ty: &TypeArgs, source: &str, cache: bool) -> Result<Outcome> {
    let catalog = load_catalog(ty.genus, ty.markings, ty.bound, cache)?;
    let Resolved { assignment, enlargements, table_type } = resolve_assignment(source, ty.bound, cache)?;
    if let Some((g, n)) = table_type {
        if (g, n) != (ty.genus, ty.markings) {
            bail!("table {source} is for (g, n) = ({g}, {n}), not ({}, {})", ty.genus, ty.markings);
        }
    }
    let report = verify_extremal(&assignment, &catalog)?;
    let verified = report.is_verified();
    let mut dot = String::new();
    for v in &report.axiom1 {
        dot.push_str(&catalog.graph(v.graph).to_dot(&format!("axiom1_{}", v.graph)));
    }
    let mut config = type_config(ty);
    config["assignment"] = json!(source);
    let payload = json!({"verified": verified, "enlargements": enlargements, "report": report});
    Ok(Outcome {
        report: Report::new("verify-assignment", config, payload),
        dot,
        catalog: None,
        exit: if verified { 0 } else { 2 },
    })
}

pub fn contract(graph: &Path, vertices: Option<&[u32]>, source: &str, bound: u32, cache: bool) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let z: Vec<usize> = match vertices {
        Some(ids) => ids
            .iter()
            .map(|&id| g.vertex_index(id).with_context(|| format!("graph has no vertex with id {id}")))
            .collect::<Result<_>>()?,
        None => {
            let Resolved { assignment, table_type, .. } = resolve_assignment(source, bound, cache)?;
            if let Some((tg, tn)) = table_type {
                if (tg, tn) != (g.genus(), g.num_legs() as u32) {
                    bail!(
                        "table {source} is for (g, n) = ({tg}, {tn}), the graph is ({}, {})",
                        g.genus(),
                        g.num_legs()
                    );
                }
            }
            assignment.evaluate(&g)?
        }
    };
    let a = z_contract(&g, &z)?;
    let mut config = json!({"graph": graph});
    match vertices {
        Some(ids) => config["vertices"] = json!(ids),
        None => config["assignment"] = json!(source),
    }
    let ids: Vec<u32> = z.iter().map(|&v| g.vertex_id(v)).collect();
    let payload = json!({"contracted": ids, "axis": a.to_json(), "classification": classify_axis_points(&a)});
    Ok(Outcome {
        report: Report::new("contract", config, payload),
        dot: a.star_expansion().to_dot("axis"),
        catalog: None,
        exit: 0,
    })
}

pub fn fiber(axis: &Path) -> Result<Outcome> {
    let a = read_axis(axis)?;
    let strata = fiber_strata(&a)?;
    let graphs: Vec<Value> = strata
        .graphs
        .iter()
        .map(|f| json!({"choice": f.choice, "inserted": f.inserted, "graph": f.graph.to_json()}))
        .collect();
    let payload = json!({
        "factors": strata.factors,
        "count": strata.graphs.len(),
        "moduli_positive": strata.moduli_positive,
        "graphs": graphs,
    });
    Ok(Outcome {
        report: Report::new("fiber", json!({"axis": axis}), payload),
        dot: dot_all(strata.graphs.iter().map(|f| &f.graph), "fiber"),
        catalog: None,
        exit: 0,
    })
}

pub fn torelli_classes(ty: &TypeArgs, cache: bool) -> Result<Outcome> {
    let catalog = load_catalog(ty.genus, ty.markings, ty.bound, cache)?;
    let classes = torelli::torelli_classes(&catalog)?;
    let mut dot = String::new();
    let rows: Vec<Value> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let p = torelli::pst(catalog.graph(c.members[0]));
            if let Some(u) = p.union() {
                dot.push_str(&u.to_dot(&format!("class{i}")));
            }
            let members: Vec<String> = c.members.iter().map(|&m| catalog.key(m).to_hex()).collect();
            json!({"key": c.key.to_hex(), "members": members})
        })
        .collect();
    let payload = json!({"graphs": catalog.len(), "count": classes.len(), "classes": rows});
    Ok(Outcome { report: Report::new("torelli-classes", type_config(ty), payload), dot, catalog: None, exit: 0 })
}

pub fn fiber_check(axis: &Path) -> Result<Outcome> {
    let a = read_axis(axis)?;
    let check = fiber_constant(&a)?;
    let mut payload = json!({
        "graphs": check.graphs,
        "quasi_separating": check.quasi_separating,
        "matches_criterion": check.matches_criterion(),
    });
    let mut dot = String::new();
    match &check.verdict {
        FiberVerdict::Constant { key } => {
            payload["verdict"] = json!("constant");
            payload["key"] = json!(key.to_hex());
            let strata = fiber_strata(&a)?;
            if let Some(u) = torelli::pst(&strata.graphs[0].graph).union() {
                dot = u.to_dot("pst");
            }
        }
        FiberVerdict::Varies { reason } => {
            payload["verdict"] = json!("varies");
            let strata = fiber_strata(&a)?;
            let involved = match reason {
                VariesReason::Remnant { graph, .. } => vec![*graph],
                VariesReason::KeyMismatch { first, second } => vec![*first, *second],
            };
            let graphs: Vec<Value> = involved
                .iter()
                .map(|&i| {
                    let f = &strata.graphs[i];
                    let _ = write!(dot, "{}", f.graph.to_dot(&format!("fiber{i}")));
                    let key = torelli::torelli_key(&f.graph).map(|k| k.to_hex()).ok();
                    json!({"index": i, "choice": f.choice, "torelli_key": key, "graph": f.graph.to_json()})
                })
                .collect();
            payload["witness"] = json!({"reason": reason, "graphs": graphs});
        }
    }
    Ok(Outcome {
        report: Report::new("fiber-check", json!({"axis": axis}), payload),
        dot,
        catalog: None,
        exit: if check.verdict.is_constant() { 0 } else { 2 },
    })
}
