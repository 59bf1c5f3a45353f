//! Semantic validation and authoring lint.
//!
//! Published diagnostic codes:
//!
//! | code | severity | meaning |
//! |------|----------|---------|
//! | E001 | error | self-loop edge |
//! | E002 | error | node unreachable from every entry point |
//! | E003 | error | entry point cannot reach any Outcome node |
//! | E004 | error | missing or blank translation |
//! | E005 | error | exclusion group with unknown member or fewer than two members |
//! | E006 | error | prerequisite dependency cycle |
//! | E007 | error | Outcome node with outgoing edges |
//! | E008 | error | entry point references unknown node, or graph has no entry points |
//! | E009 | error | edge endpoint or prerequisite rule references an unknown id |
//! | W001 | warning | node detail text equals its summary |
//! | W002 | warning | appeal or judicial review without a time limit |
//! | W003 | warning | court or tribunal with no advice links and no disclaimer |
//!
//! Reachability (E002, E003) is rule-consistent: a journey only moves along
//! enabled edges, never repeats an edge and stops at terminal nodes. The
//! search here is a breadth-first walk over `(node, taken edges)` states and
//! shares no code with [`crate::pathfinder`], which is used to cross-check it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{BodyCategory, EdgeKind, LocalizedText, PathwayGraph};
use crate::parallel::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Code {
    E001,
    E002,
    E003,
    E004,
    E005,
    E006,
    E007,
    E008,
    E009,
    W001,
    W002,
    W003,
}

impl Code {
    pub fn severity(self) -> Severity {
        match self {
            Code::W001 | Code::W002 | Code::W003 => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Code::E001 => "E001",
            Code::E002 => "E002",
            Code::E003 => "E003",
            Code::E004 => "E004",
            Code::E005 => "E005",
            Code::E006 => "E006",
            Code::E007 => "E007",
            Code::E008 => "E008",
            Code::E009 => "E009",
            Code::W001 => "W001",
            Code::W002 => "W002",
            Code::W003 => "W003",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn new(code: Code, subject: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code,
            severity: code.severity(),
            subject: subject.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}[{}] {}: {}", self.code, self.subject, self.message)
    }
}

pub fn validate(graph: &PathwayGraph) -> Vec<Diagnostic> {
    validate_with(graph, Execution::default())
}

pub fn validate_with(graph: &PathwayGraph, exec: Execution) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_edges(graph, &mut out);
    check_translations(graph, &mut out);
    check_groups(graph, &mut out);
    check_rule_cycles(graph, &mut out);
    check_entries(graph, &mut out);
    check_reachability(graph, exec, &mut out);
    check_lint(graph, &mut out);
    out.sort_by(|a, b| {
        (a.code, &a.subject, &a.message).cmp(&(b.code, &b.subject, &b.message))
    });
    out.dedup();
    out
}

pub fn is_publishable(graph: &PathwayGraph) -> bool {
    !validate(graph).iter().any(Diagnostic::is_error)
}

fn check_edges(g: &PathwayGraph, out: &mut Vec<Diagnostic>) {
    let nodes: HashSet<&str> = g.nodes.iter().map(|n| n.id.as_str()).collect();
    let edges: HashSet<&str> = g.edges.iter().map(|e| e.id.as_str()).collect();
    for e in &g.edges {
        if e.from == e.to {
            out.push(Diagnostic::new(
                Code::E001,
                &e.id,
                format!("edge loops from `{}` back to itself", e.from),
            ));
        }
        for end in [&e.from, &e.to] {
            if !nodes.contains(end.as_str()) {
                out.push(Diagnostic::new(
                    Code::E009,
                    &e.id,
                    format!("edge references unknown node `{end}`"),
                ));
            }
        }
    }
    for (i, rule) in g.prerequisite_rules.iter().enumerate() {
        for id in std::iter::once(&rule.edge).chain(&rule.requires) {
            if !edges.contains(id.as_str()) {
                out.push(Diagnostic::new(
                    Code::E009,
                    format!("rule[{i}]"),
                    format!("prerequisite rule references unknown edge `{id}`"),
                ));
            }
        }
    }
    for n in &g.nodes {
        if n.category == BodyCategory::Outcome && g.edges.iter().any(|e| e.from == n.id) {
            out.push(Diagnostic::new(
                Code::E007,
                &n.id,
                "outcome node has outgoing edges",
            ));
        }
    }
}

fn check_translations(g: &PathwayGraph, out: &mut Vec<Diagnostic>) {
    let mut texts: Vec<(String, &LocalizedText)> = vec![
        ("graph.title".into(), &g.title),
        ("graph.disclaimer".into(), &g.disclaimer),
    ];
    for n in &g.nodes {
        texts.push((format!("node:{}.title", n.id), &n.title));
        texts.push((format!("node:{}.summary", n.id), &n.summary));
        texts.push((format!("node:{}.detail", n.id), &n.detail));
        for (i, link) in n.advice_links.iter().enumerate() {
            texts.push((format!("node:{}.adviceLinks[{i}].label", n.id), &link.label));
        }
    }
    for e in &g.edges {
        texts.push((format!("edge:{}.label", e.id), &e.label));
        texts.push((format!("edge:{}.explanation", e.id), &e.explanation));
    }
    for x in &g.exclusion_groups {
        texts.push((format!("group:{}.explanation", x.id), &x.explanation));
    }
    for (i, r) in g.prerequisite_rules.iter().enumerate() {
        texts.push((format!("rule[{i}].explanation"), &r.explanation));
    }
    for ep in &g.entry_points {
        texts.push((format!("entry:{}.description", ep.id), &ep.description));
    }

    for (path, text) in texts {
        if text.en.trim().is_empty() {
            out.push(Diagnostic::new(Code::E004, format!("{path}.en"), "English text is blank"));
        }
        if text.cy.trim().is_empty() {
            out.push(Diagnostic::new(Code::E004, format!("{path}.cy"), "Welsh text is blank"));
        }
    }

    for ep in &g.entry_points {
        for lang in crate::model::Lang::ALL {
            let words = ep.keywords.get(lang);
            let subject = format!("entry:{}.keywords.{lang}", ep.id);
            if words.is_empty() {
                out.push(Diagnostic::new(Code::E004, subject, "no keywords for this language"));
            } else if words.iter().any(|w| w.trim().is_empty()) {
                out.push(Diagnostic::new(Code::E004, subject, "blank keyword"));
            }
        }
    }
}

fn check_groups(g: &PathwayGraph, out: &mut Vec<Diagnostic>) {
    let edges: HashSet<&str> = g.edges.iter().map(|e| e.id.as_str()).collect();
    for group in &g.exclusion_groups {
        let distinct: BTreeSet<&str> = group.members.iter().map(String::as_str).collect();
        if distinct.len() < 2 {
            out.push(Diagnostic::new(
                Code::E005,
                &group.id,
                "exclusion group needs at least two members",
            ));
        }
        for m in &group.members {
            if !edges.contains(m.as_str()) {
                out.push(Diagnostic::new(
                    Code::E005,
                    &group.id,
                    format!("unknown member edge `{m}`"),
                ));
            }
        }
    }
}

fn check_rule_cycles(g: &PathwayGraph, out: &mut Vec<Diagnostic>) {
    let mut deps: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for r in &g.prerequisite_rules {
        deps.entry(r.edge.as_str())
            .or_default()
            .extend(r.requires.iter().map(String::as_str));
    }
    for &start in deps.keys() {
        // Is `start` reachable from its own requirements?
        let mut stack: Vec<&str> = deps[start].iter().copied().collect();
        let mut seen = HashSet::new();
        let mut cyclic = false;
        while let Some(cur) = stack.pop() {
            if cur == start {
                cyclic = true;
                break;
            }
            if seen.insert(cur) {
                if let Some(next) = deps.get(cur) {
                    stack.extend(next.iter().copied());
                }
            }
        }
        if cyclic {
            out.push(Diagnostic::new(
                Code::E006,
                start,
                "edge transitively requires itself",
            ));
        }
    }
}

fn check_entries(g: &PathwayGraph, out: &mut Vec<Diagnostic>) {
    if g.entry_points.is_empty() {
        out.push(Diagnostic::new(Code::E008, "entryPoints", "graph has no entry points"));
    }
    for ep in &g.entry_points {
        if g.node(&ep.node).is_none() {
            out.push(Diagnostic::new(
                Code::E008,
                &ep.id,
                format!("entry point references unknown node `{}`", ep.node),
            ));
        }
    }
}

fn check_lint(g: &PathwayGraph, out: &mut Vec<Diagnostic>) {
    for n in &g.nodes {
        if n.detail == n.summary {
            out.push(Diagnostic::new(
                Code::W001,
                &n.id,
                "detail text repeats the summary",
            ));
        }
        if matches!(n.category, BodyCategory::Court | BodyCategory::Tribunal)
            && n.advice_links.is_empty()
            && !n.disclaimer_required
        {
            out.push(Diagnostic::new(
                Code::W003,
                &n.id,
                "court or tribunal without advice links or disclaimer",
            ));
        }
    }
    for e in &g.edges {
        if matches!(e.kind, EdgeKind::Appeal | EdgeKind::JudicialReview) && e.time_limit_days.is_none() {
            out.push(Diagnostic::new(
                Code::W002,
                &e.id,
                format!("{:?} edge has no time limit", e.kind),
            ));
        }
    }
}

/// What a journey starting at one entry point can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReach {
    pub nodes: BTreeSet<String>,
    pub reaches_outcome: bool,
}

/// Rule-consistent reachability for every entry point whose node exists.
pub fn reachability(graph: &PathwayGraph, exec: Execution) -> BTreeMap<String, EntryReach> {
    let space = StateSpace::new(graph);
    let entries: Vec<(&str, usize)> = graph
        .entry_points
        .iter()
        .filter_map(|ep| space.node_index.get(ep.node.as_str()).map(|&n| (ep.id.as_str(), n)))
        .collect();
    let reaches = parallel::map(exec, &entries, |&(_, start)| space.explore(start));
    entries
        .iter()
        .zip(reaches)
        .map(|(&(id, _), seen)| {
            let reaches_outcome = seen
                .iter()
                .any(|&n| graph.nodes[n].category == BodyCategory::Outcome);
            let nodes = seen.into_iter().map(|n| graph.nodes[n].id.clone()).collect();
            (id.to_string(), EntryReach { nodes, reaches_outcome })
        })
        .collect()
}

fn check_reachability(g: &PathwayGraph, exec: Execution, out: &mut Vec<Diagnostic>) {
    let reach = reachability(g, exec);
    let mut any: HashSet<&str> = HashSet::new();
    for r in reach.values() {
        any.extend(r.nodes.iter().map(String::as_str));
    }
    for n in &g.nodes {
        if !any.contains(n.id.as_str()) {
            out.push(Diagnostic::new(
                Code::E002,
                &n.id,
                "node is unreachable from every entry point",
            ));
        }
    }
    for (entry, r) in &reach {
        if !r.reaches_outcome {
            out.push(Diagnostic::new(
                Code::E003,
                entry,
                "no rule-consistent route reaches an Outcome node",
            ));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

struct Step {
    edge: usize,
    target: usize,
    /// One entry per rule targeting this edge; `None` if the rule can
    /// never be satisfied (it names an unknown edge).
    requires: Vec<Option<Bits>>,
    /// Other members of each exclusion group containing this edge.
    excluded_by: Vec<Bits>,
}

struct StateSpace<'g> {
    node_index: HashMap<&'g str, usize>,
    terminal: Vec<bool>,
    moves: Vec<Vec<Step>>,
    edge_count: usize,
}

impl<'g> StateSpace<'g> {
    fn new(g: &'g PathwayGraph) -> Self {
        let mut node_index = HashMap::new();
        for (i, n) in g.nodes.iter().enumerate() {
            node_index.entry(n.id.as_str()).or_insert(i);
        }
        let mut edge_index = HashMap::new();
        for (i, e) in g.edges.iter().enumerate() {
            edge_index.entry(e.id.as_str()).or_insert(i);
        }
        let edge_count = g.edges.len();
        let to_bits = |ids: &mut dyn Iterator<Item = &String>| -> Option<Bits> {
            let mut b = Bits::new(edge_count);
            for id in ids {
                b.set(*edge_index.get(id.as_str())?);
            }
            Some(b)
        };

        let terminal = g
            .nodes
            .iter()
            .map(|n| n.category == BodyCategory::Outcome || !g.edges.iter().any(|e| e.from == n.id))
            .collect();

        let mut moves: Vec<Vec<Step>> = (0..g.nodes.len()).map(|_| Vec::new()).collect();
        for (i, e) in g.edges.iter().enumerate() {
            let (Some(&from), Some(&target)) =
                (node_index.get(e.from.as_str()), node_index.get(e.to.as_str()))
            else {
                continue;
            };
            let requires = g
                .prerequisite_rules
                .iter()
                .filter(|r| r.edge == e.id)
                .map(|r| to_bits(&mut r.requires.iter()))
                .collect();
            let excluded_by = g
                .exclusion_groups
                .iter()
                .filter(|x| x.members.contains(&e.id))
                .map(|x| {
                    let mut b = Bits::new(edge_count);
                    for m in x.members.iter().filter(|m| **m != e.id) {
                        if let Some(&j) = edge_index.get(m.as_str()) {
                            b.set(j);
                        }
                    }
                    b
                })
                .collect();
            moves[from].push(Step {
                edge: i,
                target,
                requires,
                excluded_by,
            });
        }
        Self {
            node_index,
            terminal,
            moves,
            edge_count,
        }
    }

    fn explore(&self, start: usize) -> BTreeSet<usize> {
        let mut reached = BTreeSet::from([start]);
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(start, Bits::new(self.edge_count))]);
        while let Some((node, taken)) = queue.pop_front() {
            if !seen.insert((node, taken.clone())) || self.terminal[node] {
                continue;
            }
            for step in &self.moves[node] {
                let enabled = !taken.get(step.edge)
                    && step
                        .requires
                        .iter()
                        .all(|r| r.as_ref().is_some_and(|r| r.is_subset_of(&taken)))
                    && !step.excluded_by.iter().any(|x| x.intersects(&taken));
                if enabled {
                    let mut next = taken.clone();
                    next.set(step.edge);
                    reached.insert(step.target);
                    queue.push_back((step.target, next));
                }
            }
        }
        reached
    }
}
