//! Bundled case-study graphs: housing/homelessness and school exclusions.
//!
//! The files are stored in canonical form, so their bytes are exactly what
//! [`crate::canonical::serialize_graph`] produces and their hashes can be
//! pinned.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::canonical;
use crate::model::PathwayGraph;
use crate::parse::{parse_graph, ParseError};

const HOUSING: &str = include_str!("../data/housing.json");
const EDUCATION: &str = include_str!("../data/education.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DatasetName {
    Housing,
    Education,
}

impl DatasetName {
    pub const ALL: [DatasetName; 2] = [DatasetName::Housing, DatasetName::Education];

    pub fn as_str(self) -> &'static str {
        match self {
            DatasetName::Housing => "housing",
            DatasetName::Education => "education",
        }
    }

    pub fn bytes(self) -> &'static [u8] {
        match self {
            DatasetName::Housing => HOUSING.as_bytes(),
            DatasetName::Education => EDUCATION.as_bytes(),
        }
    }
}

impl fmt::Display for DatasetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("unknown dataset `{0}` (expected housing or education)")]
    UnknownDataset(String),
    #[error("bundled dataset `{name}` does not parse: {source}")]
    Corrupt { name: DatasetName, source: ParseError },
}

impl FromStr for DatasetName {
    type Err = DatasetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "housing" => Ok(DatasetName::Housing),
            "education" => Ok(DatasetName::Education),
            other => Err(DatasetError::UnknownDataset(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundledDataset {
    pub name: DatasetName,
    pub graph: PathwayGraph,
    pub content_hash: String,
}

pub fn load_bundled(name: DatasetName) -> Result<PathwayGraph, DatasetError> {
    parse_graph(name.bytes()).map_err(|source| DatasetError::Corrupt { name, source })
}

pub fn load_bundled_by_name(name: &str) -> Result<PathwayGraph, DatasetError> {
    load_bundled(name.parse()?)
}

pub fn bundled(name: DatasetName) -> Result<BundledDataset, DatasetError> {
    let graph = load_bundled(name)?;
    let content_hash = canonical::graph_hash(&graph);
    Ok(BundledDataset {
        name,
        graph,
        content_hash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!("housing".parse::<DatasetName>().unwrap(), DatasetName::Housing);
        assert_eq!(
            load_bundled_by_name("transport"),
            Err(DatasetError::UnknownDataset("transport".into()))
        );
    }

    #[test]
    fn files_are_stored_canonically() {
        for name in DatasetName::ALL {
            let g = load_bundled(name).unwrap();
            assert_eq!(canonical::serialize_graph(&g), name.bytes(), "{name}");
        }
    }
}
