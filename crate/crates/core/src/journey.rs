//! The journey state machine.
//!
//! A [`JourneyDoc`] records an entry point and the choices made since. It
//! holds no rule state of its own: every operation replays the recorded
//! steps against the graph, so the document can be handed to a client as an
//! opaque token and trusted only as far as it replays.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{self, Style};
use crate::model::{Lang, LocalizedText, PathwayGraph, RedressEdge};
use crate::parse::NO_ACTION;
use crate::validation;

pub const JOURNEY_SCHEMA_VERSION: &str = "artemus-journey/1";

/// An edge id, or the engine-synthesized "do nothing" choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum Choice {
    Edge(String),
    NoAction,
}

impl Choice {
    pub fn edge(id: impl Into<String>) -> Self {
        Choice::Edge(id.into())
    }

    pub fn as_edge(&self) -> Option<&str> {
        match self {
            Choice::Edge(id) => Some(id),
            Choice::NoAction => None,
        }
    }
}

impl From<String> for Choice {
    fn from(s: String) -> Self {
        if s == NO_ACTION {
            Choice::NoAction
        } else {
            Choice::Edge(s)
        }
    }
}

impl From<Choice> for String {
    fn from(c: Choice) -> Self {
        match c {
            Choice::Edge(id) => id,
            Choice::NoAction => NO_ACTION.to_string(),
        }
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Choice::Edge(id) => f.write_str(id),
            Choice::NoAction => f.write_str(NO_ACTION),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Step {
    pub at_node: String,
    pub chosen: Choice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JourneyDoc {
    pub schema_version: String,
    pub graph_id: String,
    pub graph_hash: String,
    pub language: Lang,
    pub entry_point_id: String,
    pub steps: Vec<Step>,
    pub concluded: bool,
}

impl JourneyDoc {
    pub fn to_canonical_json(&self) -> String {
        canonical::to_canonical_string(self, Style::Compact)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReasonCode {
    PrerequisiteUnmet,
    ExcludedBy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DisabledReason {
    pub code: ReasonCode,
    /// Unmet requirements, or the taken edges that closed this option.
    pub blocking_ids: Vec<String>,
    pub explanation: LocalizedText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OptionView {
    pub choice: Choice,
    pub enabled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<DisabledReason>,
    pub label: LocalizedText,
    pub explanation: LocalizedText,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_limit_days: Option<u32>,
    pub pre_action_protocol: bool,
    pub disclaimer_required: bool,
}

pub fn no_action_label() -> LocalizedText {
    LocalizedText::new("Do nothing", "Gwneud dim byd")
}

pub fn no_action_explanation() -> LocalizedText {
    LocalizedText::new(
        "You may decide to take no further action. Deciding that the right decision has been made is a valid outcome.",
        "Gallwch benderfynu peidio â chymryd unrhyw gamau pellach. Mae penderfynu bod y penderfyniad cywir wedi'i wneud yn ganlyniad dilys.",
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JourneyError {
    #[error("unknown entry point `{0}`")]
    UnknownEntryPoint(String),
    #[error("graph `{0}` is not publishable")]
    UnpublishableGraph(String),
    #[error("journey was recorded against graph hash {journey}, current graph hash is {graph}")]
    GraphMismatch { journey: String, graph: String },
    #[error("journey has concluded")]
    JourneyConcluded,
    #[error("choice `{choice}` is not enabled")]
    ChoiceNotEnabled {
        choice: Choice,
        reason: DisabledReason,
    },
    #[error("choice `{0}` is not available at the current step")]
    UnknownChoice(Choice),
    #[error("cannot keep {keep} steps of a journey with {len}")]
    IndexOutOfRange { keep: usize, len: usize },
    #[error("journey does not replay: {0}")]
    InvalidJourney(String),
}

impl JourneyError {
    pub fn code(&self) -> &'static str {
        match self {
            JourneyError::UnknownEntryPoint(_) => "UnknownEntryPoint",
            JourneyError::UnpublishableGraph(_) => "UnpublishableGraph",
            JourneyError::GraphMismatch { .. } => "GraphMismatch",
            JourneyError::JourneyConcluded => "JourneyConcluded",
            JourneyError::ChoiceNotEnabled { .. } => "ChoiceNotEnabled",
            JourneyError::UnknownChoice(_) => "UnknownChoice",
            JourneyError::IndexOutOfRange { .. } => "IndexOutOfRange",
            JourneyError::InvalidJourney(_) => "InvalidJourney",
        }
    }
}

/// A graph bound to its content hash, publishability and lookup tables.
///
/// The wrapped graph is only reachable by shared reference, so the hash
/// stays valid for the lifetime of the value.
#[derive(Debug)]
pub struct LoadedGraph {
    graph: PathwayGraph,
    hash: String,
    publishable: bool,
    nodes: HashMap<String, usize>,
    edges: HashMap<String, usize>,
    outgoing: Vec<Vec<usize>>,
    rules_for: Vec<Vec<usize>>,
    groups_for: Vec<Vec<usize>>,
}

/// Where a replayed journey stands.
#[derive(Debug, Clone)]
pub(crate) struct Position {
    pub node: usize,
    pub visited: Vec<bool>,
    pub concluded: bool,
}

impl LoadedGraph {
    pub fn new(graph: PathwayGraph) -> Self {
        let hash = canonical::graph_hash(&graph);
        let publishable = validation::is_publishable(&graph);
        let mut nodes = HashMap::new();
        for (i, n) in graph.nodes.iter().enumerate() {
            nodes.entry(n.id.clone()).or_insert(i);
        }
        let mut edges = HashMap::new();
        for (i, e) in graph.edges.iter().enumerate() {
            edges.entry(e.id.clone()).or_insert(i);
        }
        let mut outgoing = vec![Vec::new(); graph.nodes.len()];
        for (i, e) in graph.edges.iter().enumerate() {
            if let Some(&from) = nodes.get(&e.from) {
                outgoing[from].push(i);
            }
        }
        let mut rules_for = vec![Vec::new(); graph.edges.len()];
        for (i, r) in graph.prerequisite_rules.iter().enumerate() {
            if let Some(&e) = edges.get(&r.edge) {
                rules_for[e].push(i);
            }
        }
        let mut groups_for = vec![Vec::new(); graph.edges.len()];
        for (i, g) in graph.exclusion_groups.iter().enumerate() {
            for m in &g.members {
                if let Some(&e) = edges.get(m) {
                    if !groups_for[e].contains(&i) {
                        groups_for[e].push(i);
                    }
                }
            }
        }
        Self {
            graph,
            hash,
            publishable,
            nodes,
            edges,
            outgoing,
            rules_for,
            groups_for,
        }
    }

    pub fn graph(&self) -> &PathwayGraph {
        &self.graph
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn is_publishable(&self) -> bool {
        self.publishable
    }

    pub fn into_graph(self) -> PathwayGraph {
        self.graph
    }

    pub(crate) fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.get(id).copied()
    }

    pub(crate) fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.get(id).copied()
    }

    fn is_terminal(&self, node: usize) -> bool {
        self.graph.nodes[node].category == crate::model::BodyCategory::Outcome
            || self.outgoing[node].is_empty()
    }

    /// Why `edge` is disabled given the edges taken so far, if it is.
    /// Exclusions are reported ahead of unmet prerequisites because they
    /// can never be undone by going further.
    pub(crate) fn disabled_reason(&self, edge: usize, visited: &[bool]) -> Option<DisabledReason> {
        let id = &self.graph.edges[edge].id;
        for &g in &self.groups_for[edge] {
            let group = &self.graph.exclusion_groups[g];
            let blocking: Vec<String> = group
                .members
                .iter()
                .filter(|m| *m != id && self.edge_index(m).is_some_and(|j| visited[j]))
                .cloned()
                .collect();
            if !blocking.is_empty() {
                return Some(DisabledReason {
                    code: ReasonCode::ExcludedBy,
                    blocking_ids: blocking,
                    explanation: group.explanation.clone(),
                });
            }
        }
        for &r in &self.rules_for[edge] {
            let rule = &self.graph.prerequisite_rules[r];
            let missing: Vec<String> = rule
                .requires
                .iter()
                .filter(|req| !self.edge_index(req).is_some_and(|j| visited[j]))
                .cloned()
                .collect();
            if !missing.is_empty() {
                return Some(DisabledReason {
                    code: ReasonCode::PrerequisiteUnmet,
                    blocking_ids: missing,
                    explanation: rule.explanation.clone(),
                });
            }
        }
        None
    }

    fn check_binding(&self, doc: &JourneyDoc) -> Result<(), JourneyError> {
        if doc.graph_hash != self.hash {
            return Err(JourneyError::GraphMismatch {
                journey: doc.graph_hash.clone(),
                graph: self.hash.clone(),
            });
        }
        if !self.publishable {
            return Err(JourneyError::UnpublishableGraph(self.graph.id.clone()));
        }
        Ok(())
    }

    /// Replay every recorded step, checking it was legal when taken.
    pub(crate) fn replay(&self, doc: &JourneyDoc) -> Result<Position, JourneyError> {
        self.check_binding(doc)?;
        if doc.schema_version != JOURNEY_SCHEMA_VERSION {
            return Err(JourneyError::InvalidJourney(format!(
                "unsupported schema version `{}`",
                doc.schema_version
            )));
        }
        let (pos, _) = self.replay_steps(&doc.entry_point_id, &doc.steps)?;
        if pos.concluded != doc.concluded {
            return Err(JourneyError::InvalidJourney(format!(
                "recorded concluded={} but replay gives {}",
                doc.concluded, pos.concluded
            )));
        }
        Ok(pos)
    }

    fn start_position(&self, entry_point_id: &str) -> Result<Position, JourneyError> {
        let entry = self
            .graph
            .entry_point(entry_point_id)
            .ok_or_else(|| JourneyError::UnknownEntryPoint(entry_point_id.to_string()))?;
        let node = self
            .node_index(&entry.node)
            .ok_or_else(|| JourneyError::UnpublishableGraph(self.graph.id.clone()))?;
        Ok(Position {
            node,
            visited: vec![false; self.graph.edges.len()],
            concluded: self.is_terminal(node),
        })
    }

    fn replay_steps(
        &self,
        entry_point_id: &str,
        steps: &[Step],
    ) -> Result<(Position, usize), JourneyError> {
        let mut pos = self.start_position(entry_point_id)?;
        for (i, step) in steps.iter().enumerate() {
            let invalid = |why: String| JourneyError::InvalidJourney(format!("step {i}: {why}"));
            if pos.concluded {
                return Err(invalid("journey had already concluded".into()));
            }
            let here = &self.graph.nodes[pos.node].id;
            if &step.at_node != here {
                return Err(invalid(format!("expected to be at `{here}`, not `{}`", step.at_node)));
            }
            match &step.chosen {
                Choice::NoAction => pos.concluded = true,
                Choice::Edge(id) => {
                    let edge = self
                        .edge_index(id)
                        .filter(|e| self.outgoing[pos.node].contains(e))
                        .ok_or_else(|| invalid(format!("`{id}` does not leave `{here}`")))?;
                    if self.disabled_reason(edge, &pos.visited).is_some() {
                        return Err(invalid(format!("`{id}` was not enabled")));
                    }
                    pos = self.advance(pos, edge);
                }
            }
        }
        Ok((pos, steps.len()))
    }

    fn advance(&self, mut pos: Position, edge: usize) -> Position {
        pos.visited[edge] = true;
        pos.node = self.node_index(&self.graph.edges[edge].to).expect("publishable graph has no dangling edges");
        pos.concluded = self.is_terminal(pos.node);
        pos
    }

    pub(crate) fn edge_option(&self, edge: &RedressEdge, reason: Option<DisabledReason>) -> OptionView {
        OptionView {
            choice: Choice::Edge(edge.id.clone()),
            enabled: reason.is_none(),
            reason,
            label: edge.label.clone(),
            explanation: edge.explanation.clone(),
            time_limit_days: edge.time_limit_days,
            pre_action_protocol: edge.pre_action_protocol,
            disclaimer_required: edge.disclaimer_required,
        }
    }

    pub(crate) fn options_at(&self, pos: &Position) -> Vec<OptionView> {
        let mut out: Vec<OptionView> = self.outgoing[pos.node]
            .iter()
            .map(|&e| self.edge_option(&self.graph.edges[e], self.disabled_reason(e, &pos.visited)))
            .collect();
        out.push(no_action_option());
        out
    }
}

pub fn no_action_option() -> OptionView {
    OptionView {
        choice: Choice::NoAction,
        enabled: true,
        reason: None,
        label: no_action_label(),
        explanation: no_action_explanation(),
        time_limit_days: None,
        pre_action_protocol: false,
        disclaimer_required: false,
    }
}

pub fn start(graph: &LoadedGraph, entry_point_id: &str, lang: Lang) -> Result<JourneyDoc, JourneyError> {
    if graph.graph.entry_point(entry_point_id).is_none() {
        return Err(JourneyError::UnknownEntryPoint(entry_point_id.to_string()));
    }
    if !graph.publishable {
        return Err(JourneyError::UnpublishableGraph(graph.graph.id.clone()));
    }
    let pos = graph.start_position(entry_point_id)?;
    Ok(JourneyDoc {
        schema_version: JOURNEY_SCHEMA_VERSION.to_string(),
        graph_id: graph.graph.id.clone(),
        graph_hash: graph.hash.clone(),
        language: lang,
        entry_point_id: entry_point_id.to_string(),
        steps: Vec::new(),
        concluded: pos.concluded,
    })
}

/// The choices at the journey's current node: one per outgoing edge in
/// declaration order, then "do nothing".
pub fn options(graph: &LoadedGraph, journey: &JourneyDoc) -> Result<Vec<OptionView>, JourneyError> {
    let pos = graph.replay(journey)?;
    if pos.concluded {
        return Err(JourneyError::JourneyConcluded);
    }
    Ok(graph.options_at(&pos))
}

pub fn step(graph: &LoadedGraph, journey: &JourneyDoc, choice: &Choice) -> Result<JourneyDoc, JourneyError> {
    let pos = graph.replay(journey)?;
    if pos.concluded {
        return Err(JourneyError::JourneyConcluded);
    }
    let at_node = graph.graph.nodes[pos.node].id.clone();
    let concluded = match choice {
        Choice::NoAction => true,
        Choice::Edge(id) => {
            let edge = graph
                .edge_index(id)
                .filter(|e| graph.outgoing[pos.node].contains(e))
                .ok_or_else(|| JourneyError::UnknownChoice(choice.clone()))?;
            if let Some(reason) = graph.disabled_reason(edge, &pos.visited) {
                return Err(JourneyError::ChoiceNotEnabled {
                    choice: choice.clone(),
                    reason,
                });
            }
            graph.advance(pos, edge).concluded
        }
    };
    let mut next = journey.clone();
    next.steps.push(Step {
        at_node,
        chosen: choice.clone(),
    });
    next.concluded = concluded;
    Ok(next)
}

/// Keep the first `keep` steps and recompute everything else from them.
pub fn rewind(graph: &LoadedGraph, journey: &JourneyDoc, keep: usize) -> Result<JourneyDoc, JourneyError> {
    graph.replay(journey)?;
    if keep > journey.steps.len() {
        return Err(JourneyError::IndexOutOfRange {
            keep,
            len: journey.steps.len(),
        });
    }
    let steps = journey.steps[..keep].to_vec();
    let (pos, _) = graph.replay_steps(&journey.entry_point_id, &steps)?;
    Ok(JourneyDoc {
        steps,
        concluded: pos.concluded,
        ..journey.clone()
    })
}

pub fn visited_edges(journey: &JourneyDoc) -> BTreeSet<String> {
    journey
        .steps
        .iter()
        .filter_map(|s| s.chosen.as_edge().map(str::to_string))
        .collect()
}

/// Id of the node the journey currently stands at.
pub fn current_node<'g>(graph: &'g LoadedGraph, journey: &JourneyDoc) -> Result<&'g str, JourneyError> {
    let pos = graph.replay(journey)?;
    Ok(&graph.graph.nodes[pos.node].id)
}
