use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::is_cocycle;
use crate::error::{Error, Result};
use crate::graph::io::read_graph_sum;
use crate::graph::{GraphSum, UnorientedGraph};

/// Environment variable naming the cocycle library directory.
pub const DATA_ENV: &str = "GRAPHFLOW_DATA";

/// A named graph cocycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleRecord {
    pub name: String,
    pub sum: GraphSum,
    pub bigrading: (usize, usize),
    pub provenance: String,
}

impl CocycleRecord {
    /// Validates the bigrading of every term and `d(sum) = 0`.
    pub fn new(name: &str, sum: GraphSum, bigrading: (usize, usize), provenance: &str) -> Result<Self> {
        if let Some(bad) = sum.graphs().find(|g| g.bigrading() != bigrading) {
            return Err(Error::structure(format!(
                "cocycle `{name}`: term with bigrading {:?} differs from declared {bigrading:?}",
                bad.bigrading()
            )));
        }
        if !is_cocycle(&sum) {
            return Err(Error::structure(format!("`{name}` is not annihilated by d")));
        }
        Ok(CocycleRecord {
            name: name.to_string(),
            sum,
            bigrading,
            provenance: provenance.to_string(),
        })
    }

    /// The tetrahedral cocycle `γ₃`: the complete graph on 4 vertices, coefficient 1.
    pub fn gamma3() -> Self {
        CocycleRecord {
            name: "gamma3".into(),
            sum: GraphSum::single(&UnorientedGraph::tetrahedron()),
            bigrading: (4, 6),
            provenance: "Kontsevich tetrahedron (built in)".into(),
        }
    }
}

#[derive(Deserialize)]
struct Manifest {
    #[serde(default)]
    cocycle: Vec<ManifestEntry>,
}

#[derive(Deserialize)]
struct ManifestEntry {
    name: String,
    file: String,
    vertices: usize,
    edges: usize,
    #[serde(default)]
    provenance: String,
}

/// Named cocycles: the built-in `gamma3` plus whatever a library directory holds.
///
/// A library directory contains `manifest.toml` with `[[cocycle]]` tables
/// (`name`, `file`, `vertices`, `edges`, `provenance`) and one GraphSum file per
/// cocycle. Every entry is checked with [`is_cocycle`] when loaded.
#[derive(Clone, Debug, Default)]
pub struct CocycleLibrary {
    records: BTreeMap<String, CocycleRecord>,
}

impl CocycleLibrary {
    pub fn builtin() -> Self {
        let mut lib = CocycleLibrary::default();
        let g3 = CocycleRecord::gamma3();
        lib.records.insert(g3.name.clone(), g3);
        lib
    }

    /// Built-ins plus the entries of `dir/manifest.toml`.
    pub fn load(dir: &Path) -> Result<Self> {
        let mut lib = Self::builtin();
        let manifest_path = dir.join("manifest.toml");
        let text = fs::read_to_string(&manifest_path)?;
        let manifest: Manifest = toml::from_str(&text)
            .map_err(|e| Error::format(&manifest_path.display().to_string(), 0, e.to_string()))?;
        for entry in manifest.cocycle {
            let sum = read_graph_sum(&dir.join(&entry.file))?;
            let rec = CocycleRecord::new(&entry.name, sum, (entry.vertices, entry.edges), &entry.provenance)?;
            lib.records.insert(rec.name.clone(), rec);
        }
        Ok(lib)
    }

    /// Library directory from `GRAPHFLOW_DATA`, falling back to the crate's `data/`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Ok(dir) = env::var(DATA_ENV) {
            return Some(PathBuf::from(dir));
        }
        let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        bundled.join("manifest.toml").exists().then_some(bundled)
    }

    pub fn from_env() -> Result<Self> {
        match Self::default_dir() {
            Some(dir) => Self::load(&dir),
            None => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&CocycleRecord> {
        self.records.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    pub fn records(&self) -> impl Iterator<Item = &CocycleRecord> {
        self.records.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn rejects_non_cocycles() {
        let g = UnorientedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let s = GraphSum::from_graph(&g, q(1));
        if !is_cocycle(&s) {
            assert!(CocycleRecord::new("bad", s, (4, 5), "").is_err());
        }
        let g3 = CocycleRecord::gamma3();
        assert!(CocycleRecord::new("g3", g3.sum.clone(), (4, 5), "").is_err());
        assert!(CocycleRecord::new("g3", g3.sum, (4, 6), "").is_ok());
    }
}
