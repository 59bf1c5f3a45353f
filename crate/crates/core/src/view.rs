//! Render-ready focus+context description of a journey.
//!
//! Every node and edge gets exactly one style class. Layout is left to the
//! renderer; this only says what is on the path, what can be chosen next and
//! what is context.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::journey::{self, Choice, JourneyDoc, JourneyError, LoadedGraph, OptionView};
use crate::model::{edge_legend_tag, node_colour_token, LocalizedText};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Zoom {
    Pathway,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeClass {
    Current,
    Visited,
    Frontier,
    Elided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    Traversed,
    Enabled,
    Disabled,
    Elided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeStyle {
    pub class: NodeClass,
    pub colour: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeStyle {
    pub class: EdgeClass,
    pub legend: String,
}

/// One past decision, shown as a foldable block by the UI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JourneyBlock {
    pub step_index: usize,
    pub title: LocalizedText,
    pub body: LocalizedText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ViewModel {
    pub zoom: Zoom,
    pub strip: Vec<String>,
    pub frontier: Vec<OptionView>,
    pub node_styles: BTreeMap<String, NodeStyle>,
    pub edge_styles: BTreeMap<String, EdgeStyle>,
    pub journey_blocks: Vec<JourneyBlock>,
}

pub fn build(graph: &LoadedGraph, journey: &JourneyDoc, zoom: Zoom) -> Result<ViewModel, JourneyError> {
    let pos = graph.replay(journey)?;
    let g = graph.graph();
    let current = &g.nodes[pos.node].id;

    let mut strip: Vec<String> = journey.steps.iter().map(|s| s.at_node.clone()).collect();
    strip.push(current.clone());

    let frontier = if pos.concluded { Vec::new() } else { graph.options_at(&pos) };

    let mut edge_styles: BTreeMap<String, EdgeStyle> = g
        .edges
        .iter()
        .map(|e| {
            let style = EdgeStyle {
                class: EdgeClass::Elided,
                legend: edge_legend_tag(e.kind).to_string(),
            };
            (e.id.clone(), style)
        })
        .collect();
    let mut node_styles: BTreeMap<String, NodeStyle> = g
        .nodes
        .iter()
        .map(|n| {
            let style = NodeStyle {
                class: NodeClass::Elided,
                colour: node_colour_token(n.category).to_string(),
            };
            (n.id.clone(), style)
        })
        .collect();

    // Lowest precedence first; later assignments win.
    for option in &frontier {
        let Choice::Edge(id) = &option.choice else { continue };
        if let Some(style) = edge_styles.get_mut(id) {
            style.class = if option.enabled { EdgeClass::Enabled } else { EdgeClass::Disabled };
        }
        if let Some(target) = g.edge(id).and_then(|e| node_styles.get_mut(&e.to)) {
            target.class = NodeClass::Frontier;
        }
    }
    for id in journey::visited_edges(journey) {
        if let Some(style) = edge_styles.get_mut(&id) {
            style.class = EdgeClass::Traversed;
        }
    }
    for id in &strip {
        if let Some(style) = node_styles.get_mut(id) {
            style.class = NodeClass::Visited;
        }
    }
    if let Some(style) = node_styles.get_mut(current) {
        style.class = NodeClass::Current;
    }

    let journey_blocks = journey
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let (title, body) = match s.chosen.as_edge().and_then(|id| g.edge(id)) {
                Some(e) => (e.label.clone(), e.explanation.clone()),
                None => (journey::no_action_label(), journey::no_action_explanation()),
            };
            JourneyBlock {
                step_index: i,
                title,
                body,
            }
        })
        .collect();

    Ok(ViewModel {
        zoom,
        strip,
        frontier,
        node_styles,
        edge_styles,
        journey_blocks,
    })
}
