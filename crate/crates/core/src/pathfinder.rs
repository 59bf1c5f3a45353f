//! Brute-force enumeration of rule-consistent routes.
//!
//! Everything here rescans the raw graph lists on every check instead of
//! using the journey engine's lookup tables. That makes it slow but keeps it
//! an independent oracle for [`crate::journey`] and [`crate::validation`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::journey::Choice;
use crate::model::{PathwayGraph, RedressEdge};
use crate::parallel::{self, Execution};

pub const DEFAULT_MAX_DEPTH: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RouteFlags {
    pub contains_legal_claim: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_time_limit_days: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Route {
    pub entry_point_id: String,
    pub edges: Vec<String>,
    /// The terminal node reached, or for an abandonment the node where the
    /// person chose to do nothing.
    pub terminal_node: String,
    pub flags: RouteFlags,
    pub abandoned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RouteSet {
    pub routes: Vec<Route>,
    /// Some walk was cut off at the depth limit.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteOptions {
    pub max_depth: usize,
    pub include_abandonments: bool,
    pub execution: Execution,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self {
            max_depth: DEFAULT_MAX_DEPTH,
            include_abandonments: false,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathfinderError {
    #[error("unknown entry point `{0}`")]
    UnknownEntryPoint(String),
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),
}

/// Whether `edge` may be taken after `taken`, by rescanning every rule.
/// Does not consider edge repetition.
fn rules_allow(graph: &PathwayGraph, edge: &str, taken: &[&str]) -> bool {
    let prerequisites_met = graph
        .prerequisite_rules
        .iter()
        .filter(|r| r.edge == edge)
        .all(|r| r.requires.iter().all(|req| taken.contains(&req.as_str())));
    let excluded = graph
        .exclusion_groups
        .iter()
        .filter(|g| g.members.iter().any(|m| m == edge))
        .any(|g| g.members.iter().any(|m| m != edge && taken.contains(&m.as_str())));
    prerequisites_met && !excluded
}

fn entry_node<'g>(graph: &'g PathwayGraph, entry_point_id: &str) -> Result<&'g str, PathfinderError> {
    graph
        .entry_point(entry_point_id)
        .map(|e| e.node.as_str())
        .ok_or_else(|| PathfinderError::UnknownEntryPoint(entry_point_id.to_string()))
}

fn make_route(entry: &str, path: &[&RedressEdge], end: &str, abandoned: bool) -> Route {
    Route {
        entry_point_id: entry.to_string(),
        edges: path.iter().map(|e| e.id.clone()).collect(),
        terminal_node: end.to_string(),
        flags: RouteFlags {
            contains_legal_claim: path.iter().any(|e| e.kind.is_legal_claim()),
            min_time_limit_days: path.iter().filter_map(|e| e.time_limit_days).min(),
        },
        abandoned,
    }
}

struct Walk<'g> {
    graph: &'g PathwayGraph,
    entry: &'g str,
    opts: RouteOptions,
    routes: Vec<Route>,
    truncated: bool,
}

impl<'g> Walk<'g> {
    fn dfs(&mut self, node: &'g str, path: &mut Vec<&'g RedressEdge>) {
        if self.graph.is_terminal(node) {
            if !path.is_empty() {
                self.routes.push(make_route(self.entry, path, node, false));
            }
            return;
        }
        if self.opts.include_abandonments {
            self.routes.push(make_route(self.entry, path, node, true));
        }
        let taken: Vec<&str> = path.iter().map(|e| e.id.as_str()).collect();
        let next: Vec<&'g RedressEdge> = self
            .graph
            .outgoing(node)
            .filter(|e| !taken.contains(&e.id.as_str()) && rules_allow(self.graph, &e.id, &taken))
            .collect();
        if next.is_empty() {
            return;
        }
        if path.len() >= self.opts.max_depth {
            self.truncated = true;
            return;
        }
        for e in next {
            path.push(e);
            self.dfs(&e.to, path);
            path.pop();
        }
    }
}

/// All rule-consistent, edge-simple routes from the entry point to a
/// terminal node, sorted by edge-id sequence. An entry point that is
/// itself terminal has no routes.
pub fn enumerate_routes(
    graph: &PathwayGraph,
    entry_point_id: &str,
    opts: RouteOptions,
) -> Result<RouteSet, PathfinderError> {
    let start = entry_node(graph, entry_point_id)?;
    let entry = graph.entry_point(entry_point_id).map(|e| e.id.as_str()).unwrap_or_default();
    let new_walk = || Walk {
        graph,
        entry,
        opts,
        routes: Vec::new(),
        truncated: false,
    };

    let mut routes = Vec::new();
    let mut truncated = false;
    if graph.is_terminal(start) || opts.max_depth == 0 {
        let mut walk = new_walk();
        walk.dfs(start, &mut Vec::new());
        routes = walk.routes;
        truncated = walk.truncated;
    } else {
        // Split on the first edge so subtrees can be walked in parallel.
        if opts.include_abandonments {
            routes.push(make_route(entry, &[], start, true));
        }
        let first: Vec<&RedressEdge> = graph.outgoing(start).filter(|e| rules_allow(graph, &e.id, &[])).collect();
        let parts = parallel::map(opts.execution, &first, |e| {
            let mut walk = new_walk();
            let mut path = vec![*e];
            walk.dfs(&e.to, &mut path);
            (walk.routes, walk.truncated)
        });
        for (r, t) in parts {
            routes.extend(r);
            truncated |= t;
        }
    }
    routes.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(RouteSet { routes, truncated })
}

/// Nodes visited by any rule-consistent walk from the entry point,
/// including walks that stop early.
pub fn reachable_nodes(graph: &PathwayGraph, entry_point_id: &str) -> Result<BTreeSet<String>, PathfinderError> {
    let opts = RouteOptions {
        max_depth: graph.edges.len().max(1),
        include_abandonments: true,
        ..RouteOptions::default()
    };
    let set = enumerate_routes(graph, entry_point_id, opts)?;
    let mut nodes = BTreeSet::from([entry_node(graph, entry_point_id)?.to_string()]);
    for route in &set.routes {
        for id in &route.edges {
            if let Some(e) = graph.edge(id) {
                nodes.insert(e.to.clone());
            }
        }
    }
    Ok(nodes)
}

/// Recompute the enablement of every option at the end of `chosen` from
/// scratch. Edges may repeat in `chosen` (cyclic graphs), exactly as a
/// journey allows.
pub fn oracle_options(
    graph: &PathwayGraph,
    entry_point_id: &str,
    chosen: &[String],
) -> Result<Vec<(Choice, bool)>, PathfinderError> {
    let mut node = entry_node(graph, entry_point_id)?;
    for (i, id) in chosen.iter().enumerate() {
        let bad = |why: String| PathfinderError::InvalidPrefix(format!("position {i}: {why}"));
        if graph.is_terminal(node) {
            return Err(bad(format!("`{node}` is terminal")));
        }
        let edge = graph.edge(id).ok_or_else(|| bad(format!("unknown edge `{id}`")))?;
        if edge.from != node {
            return Err(bad(format!("`{id}` does not leave `{node}`")));
        }
        let taken: Vec<&str> = chosen[..i].iter().map(String::as_str).collect();
        if !rules_allow(graph, id, &taken) {
            return Err(bad(format!("`{id}` was not allowed")));
        }
        node = &edge.to;
    }
    let taken: Vec<&str> = chosen.iter().map(String::as_str).collect();
    let mut out: Vec<(Choice, bool)> = graph
        .outgoing(node)
        .map(|e| (Choice::Edge(e.id.clone()), rules_allow(graph, &e.id, &taken)))
        .collect();
    out.push((Choice::NoAction, true));
    Ok(out)
}
