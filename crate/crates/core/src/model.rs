//! Domain types for redress-pathway graphs.
//!
//! A [`PathwayGraph`] is plain data: bodies (nodes), redress actions (edges),
//! named entry points and the two kinds of rule that constrain a journey.
//! Graphs are built by [`crate::parse::parse_graph`] and treated as read-only
//! by every other module.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const GRAPH_SCHEMA_VERSION: &str = "artemus-graph/1";

/// Display language. Every piece of user-facing text exists in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lang {
    En,
    Cy,
}

impl Lang {
    pub const ALL: [Lang; 2] = [Lang::En, Lang::Cy];

    pub fn code(self) -> &'static str {
        match self {
            Lang::En => "en",
            Lang::Cy => "cy",
        }
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl std::str::FromStr for Lang {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "en" => Ok(Lang::En),
            "cy" => Ok(Lang::Cy),
            other => Err(format!("unknown language `{other}` (expected en or cy)")),
        }
    }
}

/// English and Welsh variants of one string. There is no fallback between them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizedText {
    pub en: String,
    pub cy: String,
}

impl LocalizedText {
    pub fn new(en: impl Into<String>, cy: impl Into<String>) -> Self {
        Self {
            en: en.into(),
            cy: cy.into(),
        }
    }

    pub fn get(&self, lang: Lang) -> &str {
        text_for(self, lang)
    }

    /// True when both variants contain something other than whitespace.
    pub fn is_complete(&self) -> bool {
        !self.en.trim().is_empty() && !self.cy.trim().is_empty()
    }
}

pub fn text_for(text: &LocalizedText, lang: Lang) -> &str {
    match lang {
        Lang::En => &text.en,
        Lang::Cy => &text.cy,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BodyCategory {
    LocalAuthority,
    School,
    Court,
    Tribunal,
    Ombudsman,
    Commissioner,
    AdviceProvider,
    Outcome,
}

impl BodyCategory {
    pub const ALL: [BodyCategory; 8] = [
        BodyCategory::LocalAuthority,
        BodyCategory::School,
        BodyCategory::Court,
        BodyCategory::Tribunal,
        BodyCategory::Ombudsman,
        BodyCategory::Commissioner,
        BodyCategory::AdviceProvider,
        BodyCategory::Outcome,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    InternalReview,
    Appeal,
    Complaint,
    JudicialReview,
    Signpost,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 5] = [
        EdgeKind::InternalReview,
        EdgeKind::Appeal,
        EdgeKind::Complaint,
        EdgeKind::JudicialReview,
        EdgeKind::Signpost,
    ];

    /// Appeals and judicial reviews are claims before a court or tribunal.
    pub fn is_legal_claim(self) -> bool {
        matches!(self, EdgeKind::Appeal | EdgeKind::JudicialReview)
    }
}

/// Style token for a body category. Stable across releases; the UI maps
/// tokens to actual colours.
pub fn node_colour_token(category: BodyCategory) -> &'static str {
    match category {
        BodyCategory::LocalAuthority => "cat-local-authority",
        BodyCategory::School => "cat-school",
        BodyCategory::Court => "cat-court",
        BodyCategory::Tribunal => "cat-tribunal",
        BodyCategory::Ombudsman => "cat-ombudsman",
        BodyCategory::Commissioner => "cat-commissioner",
        BodyCategory::AdviceProvider => "cat-advice-provider",
        BodyCategory::Outcome => "cat-outcome",
    }
}

/// Legend tag for an edge kind: complaints green, appeals red, judicial
/// review purple, everything else neutral.
pub fn edge_legend_tag(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Complaint => "green",
        EdgeKind::Appeal => "red",
        EdgeKind::JudicialReview => "purple",
        EdgeKind::InternalReview | EdgeKind::Signpost => "neutral",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdviceLink {
    pub label: LocalizedText,
    pub url: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Node {
    pub id: String,
    pub category: BodyCategory,
    pub title: LocalizedText,
    pub summary: LocalizedText,
    /// Expanded "learn more" text.
    pub detail: LocalizedText,
    pub advice_links: Vec<AdviceLink>,
    pub disclaimer_required: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RedressEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
    pub label: LocalizedText,
    pub explanation: LocalizedText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_limit_days: Option<u32>,
    pub pre_action_protocol: bool,
    pub disclaimer_required: bool,
}

/// Edges of which at most one may be taken in a journey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExclusionGroup {
    pub id: String,
    pub members: Vec<String>,
    pub explanation: LocalizedText,
}

/// `edge` is only available once every edge in `requires` has been taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrerequisiteRule {
    pub edge: String,
    pub requires: Vec<String>,
    pub explanation: LocalizedText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Keywords {
    pub en: Vec<String>,
    pub cy: Vec<String>,
}

impl Keywords {
    pub fn get(&self, lang: Lang) -> &[String] {
        match lang {
            Lang::En => &self.en,
            Lang::Cy => &self.cy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryPoint {
    pub id: String,
    pub node: String,
    pub description: LocalizedText,
    pub keywords: Keywords,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PathwayGraph {
    pub id: String,
    pub schema_version: String,
    pub title: LocalizedText,
    pub disclaimer: LocalizedText,
    pub nodes: Vec<Node>,
    pub edges: Vec<RedressEdge>,
    pub entry_points: Vec<EntryPoint>,
    pub exclusion_groups: Vec<ExclusionGroup>,
    pub prerequisite_rules: Vec<PrerequisiteRule>,
}

impl PathwayGraph {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&RedressEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn entry_point(&self, id: &str) -> Option<&EntryPoint> {
        self.entry_points.iter().find(|e| e.id == id)
    }

    /// Outgoing edges of `node`, in declaration order.
    pub fn outgoing<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a RedressEdge> + 'a {
        self.edges.iter().filter(move |e| e.from == node)
    }

    /// Outcome bodies and bodies with no way onward end a journey.
    pub fn is_terminal(&self, node: &str) -> bool {
        match self.node(node) {
            Some(n) if n.category == BodyCategory::Outcome => true,
            _ => self.outgoing(node).next().is_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn text_selection_never_falls_back() {
        let t = LocalizedText::new("Local Authority", "Awdurdod Lleol");
        assert_eq!(text_for(&t, Lang::Cy), "Awdurdod Lleol");
        assert_eq!(text_for(&t, Lang::En), "Local Authority");
        let same = LocalizedText::new("x", "x");
        assert_eq!(text_for(&same, Lang::En), "x");
    }

    #[test]
    fn colour_tokens_are_injective() {
        assert_eq!(node_colour_token(BodyCategory::LocalAuthority), "cat-local-authority");
        assert_ne!(
            node_colour_token(BodyCategory::Court),
            node_colour_token(BodyCategory::Tribunal)
        );
        let tokens: HashSet<_> = BodyCategory::ALL.iter().map(|c| node_colour_token(*c)).collect();
        assert_eq!(tokens.len(), 8);
    }

    #[test]
    fn legend_tags() {
        assert_eq!(edge_legend_tag(EdgeKind::Complaint), "green");
        assert_eq!(edge_legend_tag(EdgeKind::Appeal), "red");
        assert_eq!(edge_legend_tag(EdgeKind::JudicialReview), "purple");
        assert_eq!(edge_legend_tag(EdgeKind::InternalReview), "neutral");
        assert_eq!(edge_legend_tag(EdgeKind::Signpost), "neutral");
    }

    #[test]
    fn lang_round_trips_through_str() {
        for lang in Lang::ALL {
            assert_eq!(lang.code().parse::<Lang>().unwrap(), lang);
        }
        assert!("fr".parse::<Lang>().is_err());
    }
}
