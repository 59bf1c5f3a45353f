//! Strict loading of `artemus-graph/1` documents.
//!
//! The parser checks shape and referential integrity only. Anything that
//! needs graph reasoning (reachability, rule cycles, blank text) is left to
//! [`crate::validation`], so a file with blanked Welsh text still loads and
//! gets a diagnostic instead of a hard failure.

use std::collections::HashSet;

use serde_json::Value;
use thiserror::Error;

use crate::model::{PathwayGraph, GRAPH_SCHEMA_VERSION};

/// Reserved for the synthesized "do nothing" option.
pub const NO_ACTION: &str = "NO_ACTION";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("schema version mismatch: expected `{GRAPH_SCHEMA_VERSION}`, found `{0}`")]
    SchemaVersionMismatch(String),
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("missing translation at `{0}`")]
    MissingTranslation(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("dangling reference `{id}` at `{path}`")]
    DanglingReference { path: String, id: String },
    #[error("invalid value at `{path}`: {reason}")]
    InvalidValue { path: String, reason: String },
}

impl ParseError {
    /// Stable machine-readable name, mirrored by the CLI and the HTTP API.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::MalformedJson(_) => "MalformedJson",
            ParseError::SchemaVersionMismatch(_) => "SchemaVersionMismatch",
            ParseError::MissingField(_) => "MissingField",
            ParseError::UnknownField(_) => "UnknownField",
            ParseError::MissingTranslation(_) => "MissingTranslation",
            ParseError::DuplicateId(_) => "DuplicateId",
            ParseError::DanglingReference { .. } => "DanglingReference",
            ParseError::InvalidValue { .. } => "InvalidValue",
        }
    }
}

pub fn parse_graph(bytes: &[u8]) -> Result<PathwayGraph, ParseError> {
    let value: Value =
        serde_json::from_slice(bytes).map_err(|e| ParseError::MalformedJson(e.to_string()))?;
    let Value::Object(map) = &value else {
        return Err(ParseError::InvalidValue {
            path: ".".into(),
            reason: "top level must be an object".into(),
        });
    };
    match map.get("schemaVersion") {
        None => return Err(ParseError::MissingField("schemaVersion".into())),
        Some(Value::String(v)) if v == GRAPH_SCHEMA_VERSION => {}
        Some(Value::String(v)) => return Err(ParseError::SchemaVersionMismatch(v.clone())),
        Some(other) => return Err(ParseError::SchemaVersionMismatch(other.to_string())),
    }

    let graph: PathwayGraph = serde_path_to_error::deserialize(value).map_err(classify)?;
    check_structure(&graph)?;
    Ok(graph)
}

fn join(path: &str, field: &str) -> String {
    if path == "." || path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn is_language_key(path: &str) -> bool {
    path.ends_with(".en") || path.ends_with(".cy") || path == "en" || path == "cy"
}

fn classify(err: serde_path_to_error::Error<serde_json::Error>) -> ParseError {
    let path = err.path().to_string();
    let message = err.inner().to_string();
    if let Some(field) = backticked(&message, "missing field `") {
        let full = join(&path, field);
        return if field == "en" || field == "cy" {
            ParseError::MissingTranslation(full)
        } else {
            ParseError::MissingField(full)
        };
    }
    if message.starts_with("unknown field `") {
        // serde_path_to_error already appends the offending key to the path.
        return ParseError::UnknownField(path);
    }
    if is_language_key(&path) && message.starts_with("invalid type: null") {
        return ParseError::MissingTranslation(path);
    }
    ParseError::InvalidValue {
        path,
        reason: message,
    }
}

fn backticked<'a>(message: &'a str, prefix: &str) -> Option<&'a str> {
    let rest = message.strip_prefix(prefix)?;
    rest.split('`').next()
}

fn check_unique<'a>(
    ids: impl Iterator<Item = (String, &'a str)>,
) -> Result<HashSet<&'a str>, ParseError> {
    let mut seen = HashSet::new();
    for (path, id) in ids {
        if id.trim().is_empty() {
            return Err(ParseError::InvalidValue {
                path,
                reason: "id must be non-empty".into(),
            });
        }
        if !seen.insert(id) {
            return Err(ParseError::DuplicateId(id.to_string()));
        }
    }
    Ok(seen)
}

fn check_ref(known: &HashSet<&str>, path: String, id: &str) -> Result<(), ParseError> {
    if known.contains(id) {
        Ok(())
    } else {
        Err(ParseError::DanglingReference {
            path,
            id: id.to_string(),
        })
    }
}

fn check_structure(g: &PathwayGraph) -> Result<(), ParseError> {
    let nodes = check_unique(
        g.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (format!("nodes[{i}].id"), n.id.as_str())),
    )?;
    let edges = check_unique(
        g.edges
            .iter()
            .enumerate()
            .map(|(i, e)| (format!("edges[{i}].id"), e.id.as_str())),
    )?;
    check_unique(
        g.entry_points
            .iter()
            .enumerate()
            .map(|(i, e)| (format!("entryPoints[{i}].id"), e.id.as_str())),
    )?;
    check_unique(
        g.exclusion_groups
            .iter()
            .enumerate()
            .map(|(i, x)| (format!("exclusionGroups[{i}].id"), x.id.as_str())),
    )?;

    for (i, e) in g.edges.iter().enumerate() {
        if e.id == NO_ACTION {
            return Err(ParseError::InvalidValue {
                path: format!("edges[{i}].id"),
                reason: format!("`{NO_ACTION}` is reserved"),
            });
        }
        check_ref(&nodes, format!("edges[{i}].from"), &e.from)?;
        check_ref(&nodes, format!("edges[{i}].to"), &e.to)?;
        if e.time_limit_days == Some(0) {
            return Err(ParseError::InvalidValue {
                path: format!("edges[{i}].timeLimitDays"),
                reason: "time limit must be a positive number of days".into(),
            });
        }
        if e.kind.is_legal_claim() && !e.disclaimer_required {
            return Err(ParseError::InvalidValue {
                path: format!("edges[{i}].disclaimerRequired"),
                reason: format!("{:?} edges must repeat the disclaimer", e.kind),
            });
        }
    }

    for (i, ep) in g.entry_points.iter().enumerate() {
        check_ref(&nodes, format!("entryPoints[{i}].node"), &ep.node)?;
    }

    for (i, group) in g.exclusion_groups.iter().enumerate() {
        let mut members = HashSet::new();
        for (j, m) in group.members.iter().enumerate() {
            let path = format!("exclusionGroups[{i}].members[{j}]");
            check_ref(&edges, path.clone(), m)?;
            if !members.insert(m.as_str()) {
                return Err(ParseError::InvalidValue {
                    path,
                    reason: format!("`{m}` listed twice"),
                });
            }
        }
    }

    for (i, rule) in g.prerequisite_rules.iter().enumerate() {
        check_ref(&edges, format!("prerequisiteRules[{i}].edge"), &rule.edge)?;
        if rule.requires.is_empty() {
            return Err(ParseError::InvalidValue {
                path: format!("prerequisiteRules[{i}].requires"),
                reason: "must name at least one edge".into(),
            });
        }
        for (j, r) in rule.requires.iter().enumerate() {
            check_ref(&edges, format!("prerequisiteRules[{i}].requires[{j}]"), r)?;
        }
    }
    Ok(())
}
