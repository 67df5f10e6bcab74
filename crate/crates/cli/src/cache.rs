//! On-disk catalog cache keyed by `(g, n, bound, version)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use torelli_graphs::enumerate::{enumerate_stable_graphs_with_bound, GraphCatalog};
use torelli_graphs::graph::io::GraphJson;
use torelli_graphs::DualGraph;

use crate::report::{SCHEMA, TOOL_VERSION};

/// Catalog file written by `enumerate --out` and by the cache.
#[derive(Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema: String,
    pub g: u32,
    pub n: u32,
    pub count: usize,
    pub tool_version: String,
    pub graphs: Vec<GraphJson>,
}

impl CatalogFile {
    pub fn of(catalog: &GraphCatalog) -> Self {
        CatalogFile {
            schema: SCHEMA.into(),
            g: catalog.genus(),
            n: catalog.markings(),
            count: catalog.len(),
            tool_version: TOOL_VERSION.into(),
            graphs: catalog.graphs().iter().map(DualGraph::to_json).collect(),
        }
    }

    pub fn into_catalog(self) -> Result<GraphCatalog> {
        if self.schema != SCHEMA {
            bail!("unsupported catalog schema `{}`", self.schema);
        }
        let graphs = self
            .graphs
            .iter()
            .enumerate()
            .map(|(i, j)| DualGraph::try_from(j).with_context(|| format!("catalog graph {i}")))
            .collect::<Result<Vec<_>>>()?;
        let catalog = GraphCatalog::from_graphs(self.g, self.n, graphs)?;
        if catalog.len() != self.count {
            bail!("catalog lists {} graphs but {} are distinct", self.count, catalog.len());
        }
        Ok(catalog)
    }
}

/// `TORELLI_GRAPHS_CACHE`, else `$XDG_CACHE_HOME/torelli-graphs`, else
/// `~/.cache/torelli-graphs`.
pub fn cache_dir() -> Option<PathBuf> {
    let nonempty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    nonempty("TORELLI_GRAPHS_CACHE")
        .or_else(|| nonempty("XDG_CACHE_HOME").map(|p| p.join("torelli-graphs")))
        .or_else(|| nonempty("HOME").map(|p| p.join(".cache").join("torelli-graphs")))
}

fn cache_path(dir: &Path, g: u32, n: u32, bound: u32) -> PathBuf {
    dir.join(format!("catalog-g{g}-n{n}-b{bound}-v{TOOL_VERSION}.json"))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// The catalog of type `(g, n)`, from the cache when possible. A cache
/// entry that fails to load is rebuilt; a cache that cannot be written is
/// ignored.
pub fn load_catalog(g: u32, n: u32, bound: u32, use_cache: bool) -> Result<GraphCatalog> {
    torelli_graphs::enumerate::check_type(g, n, bound)?;
    let path = if use_cache { cache_dir().map(|d| cache_path(&d, g, n, bound)) } else { None };
    if let Some(p) = &path {
        if let Ok(text) = fs::read_to_string(p) {
            let parsed = serde_json::from_str::<CatalogFile>(&text).map_err(anyhow::Error::from);
            if let Ok(catalog) = parsed.and_then(CatalogFile::into_catalog) {
                if (catalog.genus(), catalog.markings()) == (g, n) {
                    return Ok(catalog);
                }
            }
        }
    }
    let catalog = enumerate_stable_graphs_with_bound(g, n, bound)?;
    if let Some(p) = &path {
        let text = serde_json::to_vec(&CatalogFile::of(&catalog))?;
        let _ = fs::create_dir_all(p.parent().expect("cache file has a directory"))
            .map_err(anyhow::Error::from)
            .and_then(|_| write_atomic(p, &text));
    }
    Ok(catalog)
}
