//! Canonical JSON: object keys sorted by byte order, arrays in declaration
//! order, UTF-8, LF line endings. Graph and journey hashes are taken over
//! these bytes, so the output must never depend on map iteration order or
//! on serde feature flags elsewhere in the dependency tree.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::model::PathwayGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Two-space indentation with a trailing newline. Used for files.
    Pretty,
    /// No insignificant whitespace. Used for tokens and API bodies.
    Compact,
}

/// Serialize any value to canonical JSON bytes.
pub fn to_canonical_vec<T: Serialize + ?Sized>(value: &T, style: Style) -> Vec<u8> {
    // Every type in this crate serializes to a JSON value without failure
    // (string keys only, no non-finite floats).
    let value = serde_json::to_value(value).expect("value is representable as JSON");
    let mut out = String::new();
    write_value(&mut out, &value, style, 0);
    if style == Style::Pretty {
        out.push('\n');
    }
    out.into_bytes()
}

pub fn to_canonical_string<T: Serialize + ?Sized>(value: &T, style: Style) -> String {
    String::from_utf8(to_canonical_vec(value, style)).expect("canonical JSON is UTF-8")
}

pub fn serialize_graph(graph: &PathwayGraph) -> Vec<u8> {
    to_canonical_vec(graph, Style::Pretty)
}

/// Lowercase hex SHA-256 of the canonical graph bytes.
pub fn graph_hash(graph: &PathwayGraph) -> String {
    sha256_hex(&serialize_graph(graph))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn write_value(out: &mut String, value: &Value, style: Style, depth: usize) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&n.to_string()),
        Value::String(s) => write_string(out, s),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, style, depth + 1);
                write_value(out, item, style, depth + 1);
            }
            newline(out, style, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut entries: Vec<(&String, &Value)> = map.iter().collect();
            entries.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
            out.push('{');
            for (i, (key, item)) in entries.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, style, depth + 1);
                write_string(out, key);
                out.push(':');
                if style == Style::Pretty {
                    out.push(' ');
                }
                write_value(out, item, style, depth + 1);
            }
            newline(out, style, depth);
            out.push('}');
        }
    }
}

fn newline(out: &mut String, style: Style, depth: usize) {
    if style == Style::Pretty {
        out.push('\n');
        for _ in 0..depth {
            out.push_str("  ");
        }
    }
}

fn write_string(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
}
