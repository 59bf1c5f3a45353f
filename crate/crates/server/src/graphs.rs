//! The set of graphs a server instance holds.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use artemus_core::datasets::{load_bundled, DatasetName};
use artemus_core::{parse_graph, LoadedGraph, ParseError};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read data directory {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("graph id `{id}` is defined by both {first} and {second}")]
    DuplicateGraph { id: String, first: PathBuf, second: PathBuf },
    #[error("bundled dataset is corrupt: {0}")]
    Bundled(String),
}

/// Graphs keyed by id. Immutable once built; reloading builds a new set.
#[derive(Debug, Default)]
pub struct GraphSet {
    graphs: BTreeMap<String, Arc<LoadedGraph>>,
}

impl GraphSet {
    pub fn bundled() -> Result<Self, LoadError> {
        let mut graphs = BTreeMap::new();
        for name in DatasetName::ALL {
            let g = load_bundled(name).map_err(|e| LoadError::Bundled(e.to_string()))?;
            graphs.insert(g.id.clone(), Arc::new(LoadedGraph::new(g)));
        }
        Ok(Self { graphs })
    }

    /// Every `*.json` file directly inside `dir`, in file-name order. Files
    /// are only read.
    pub fn from_dir(dir: &Path) -> Result<Self, LoadError> {
        let io = |source| LoadError::Io {
            path: dir.to_path_buf(),
            source,
        };
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(io)?
            .collect::<Result<Vec<_>, _>>()
            .map_err(io)?
            .into_iter()
            .map(|entry| entry.path())
            .filter(|p| p.is_file() && p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();

        let mut graphs = BTreeMap::new();
        let mut origin: BTreeMap<String, PathBuf> = BTreeMap::new();
        for path in paths {
            let bytes = fs::read(&path).map_err(|source| LoadError::Io {
                path: path.clone(),
                source,
            })?;
            let graph = parse_graph(&bytes).map_err(|source| LoadError::Parse {
                path: path.clone(),
                source,
            })?;
            if let Some(first) = origin.get(&graph.id) {
                return Err(LoadError::DuplicateGraph {
                    id: graph.id,
                    first: first.clone(),
                    second: path,
                });
            }
            origin.insert(graph.id.clone(), path);
            graphs.insert(graph.id.clone(), Arc::new(LoadedGraph::new(graph)));
        }
        Ok(Self { graphs })
    }

    /// The bundled datasets when no directory is configured.
    pub fn load(dir: Option<&Path>) -> Result<Self, LoadError> {
        match dir {
            Some(dir) => Self::from_dir(dir),
            None => Self::bundled(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&Arc<LoadedGraph>> {
        self.graphs.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<LoadedGraph>> {
        self.graphs.values()
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}
