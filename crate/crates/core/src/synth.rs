//! Seeded random pathway graphs for property tests and benchmarks.
//!
//! Generated graphs always parse: ids are unique, references resolve, and
//! legal-claim edges repeat the disclaimer. Whether they are publishable
//! depends on the random rules, so callers that need a publishable graph
//! should filter with [`crate::validation::is_publishable`].

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub max_edges: usize,
    /// Chance that an edge gets a prerequisite rule.
    pub rule_probability: f64,
    /// Allow rules to require later-declared edges, which can form cycles.
    pub allow_rule_cycles: bool,
    pub max_exclusion_groups: usize,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            min_nodes: 2,
            max_nodes: 8,
            max_edges: 12,
            rule_probability: 0.25,
            allow_rule_cycles: false,
            max_exclusion_groups: 2,
        }
    }
}

fn text(s: &str) -> LocalizedText {
    LocalizedText::new(s, format!("{s} (cy)"))
}

const BODIES: [BodyCategory; 7] = [
    BodyCategory::LocalAuthority,
    BodyCategory::School,
    BodyCategory::Court,
    BodyCategory::Tribunal,
    BodyCategory::Ombudsman,
    BodyCategory::Commissioner,
    BodyCategory::AdviceProvider,
];

pub fn random_graph_from_seed(seed: u64, params: &SynthParams) -> PathwayGraph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), params)
}

pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, params: &SynthParams) -> PathwayGraph {
    let n = rng.random_range(params.min_nodes.max(2)..=params.max_nodes.max(2));
    let outcomes = if n >= 4 { rng.random_range(1..=2) } else { 1 };
    let decisions = n - outcomes;

    let nodes: Vec<Node> = (0..n)
        .map(|i| {
            let category = if i >= decisions {
                BodyCategory::Outcome
            } else {
                *BODIES.choose(rng).unwrap()
            };
            Node {
                id: format!("n{i}"),
                category,
                title: text(&format!("Body {i}")),
                summary: text("summary"),
                detail: text("detail"),
                advice_links: vec![],
                disclaimer_required: true,
            }
        })
        .collect();

    // A random spanning tree from n0 so every node is at least structurally
    // reachable, then extra edges (possibly backwards, forming cycles).
    let mut ends: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i.min(decisions)), i)).collect();
    let budget = params.max_edges.max(ends.len());
    let extra = rng.random_range(0..=budget - ends.len());
    for _ in 0..extra {
        let from = rng.random_range(0..decisions);
        let mut to = rng.random_range(0..n - 1);
        if to >= from {
            to += 1;
        }
        ends.push((from, to));
    }

    let kinds = EdgeKind::ALL;
    let edges: Vec<RedressEdge> = ends
        .iter()
        .enumerate()
        .map(|(i, &(from, to))| {
            let kind = *kinds.choose(rng).unwrap();
            RedressEdge {
                id: format!("e{i}"),
                from: format!("n{from}"),
                to: format!("n{to}"),
                kind,
                label: text(&format!("Edge {i}")),
                explanation: text("explanation"),
                time_limit_days: kind.is_legal_claim().then_some(90),
                pre_action_protocol: false,
                disclaimer_required: kind.is_legal_claim(),
            }
        })
        .collect();
    let m = edges.len();

    let mut prerequisite_rules = Vec::new();
    for i in 0..m {
        if !rng.random_bool(params.rule_probability) {
            continue;
        }
        let pool: Vec<usize> = if params.allow_rule_cycles {
            (0..m).filter(|&j| j != i).collect()
        } else {
            (0..i).collect()
        };
        if pool.is_empty() {
            continue;
        }
        let count = rng.random_range(1..=pool.len().min(2));
        let requires = pool
            .choose_multiple(rng, count)
            .map(|j| format!("e{j}"))
            .collect();
        prerequisite_rules.push(PrerequisiteRule {
            edge: format!("e{i}"),
            requires,
            explanation: text("requires"),
        });
    }

    let mut exclusion_groups = Vec::new();
    if m >= 2 {
        for g in 0..rng.random_range(0..=params.max_exclusion_groups) {
            let size = rng.random_range(2..=m.min(3));
            let ids: Vec<usize> = (0..m).collect();
            let members = ids.choose_multiple(rng, size).map(|j| format!("e{j}")).collect();
            exclusion_groups.push(ExclusionGroup {
                id: format!("x{g}"),
                members,
                explanation: text("excluded"),
            });
        }
    }

    let mut entry_points = vec![EntryPoint {
        id: "entry0".into(),
        node: "n0".into(),
        description: text("entry"),
        keywords: Keywords {
            en: vec!["start".into()],
            cy: vec!["dechrau".into()],
        },
    }];
    if decisions > 1 && rng.random_bool(0.3) {
        entry_points.push(EntryPoint {
            id: "entry1".into(),
            node: format!("n{}", rng.random_range(1..decisions)),
            description: text("entry"),
            keywords: Keywords {
                en: vec!["other".into()],
                cy: vec!["arall".into()],
            },
        });
    }

    PathwayGraph {
        id: "synthetic".into(),
        schema_version: GRAPH_SCHEMA_VERSION.into(),
        title: text("Synthetic"),
        disclaimer: text("Synthetic graph"),
        nodes,
        edges,
        entry_points,
        exclusion_groups,
        prerequisite_rules,
    }
}

/// A layered graph with many routes, for benchmarks: `width` parallel edges
/// between each pair of consecutive layers, ending in an Outcome node.
pub fn layered_graph(layers: usize, width: usize) -> PathwayGraph {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for l in 0..=layers {
        nodes.push(Node {
            id: format!("l{l}"),
            category: if l == layers { BodyCategory::Outcome } else { BodyCategory::LocalAuthority },
            title: text(&format!("Layer {l}")),
            summary: text("summary"),
            detail: text("detail"),
            advice_links: vec![],
            disclaimer_required: false,
        });
    }
    for l in 0..layers {
        for w in 0..width {
            edges.push(RedressEdge {
                id: format!("l{l}w{w}"),
                from: format!("l{l}"),
                to: format!("l{}", l + 1),
                kind: EdgeKind::Signpost,
                label: text("step"),
                explanation: text("step"),
                time_limit_days: None,
                pre_action_protocol: false,
                disclaimer_required: false,
            });
        }
    }
    // Pair up the first choice of each layer so exclusions are exercised.
    let exclusion_groups = (1..layers)
        .map(|l| ExclusionGroup {
            id: format!("x{l}"),
            members: vec![format!("l{}w0", l - 1), format!("l{l}w0")],
            explanation: text("excluded"),
        })
        .collect();
    PathwayGraph {
        id: "layered".into(),
        schema_version: GRAPH_SCHEMA_VERSION.into(),
        title: text("Layered"),
        disclaimer: text("Synthetic graph"),
        nodes,
        edges,
        entry_points: vec![EntryPoint {
            id: "entry0".into(),
            node: "l0".into(),
            description: text("entry"),
            keywords: Keywords {
                en: vec!["start".into()],
                cy: vec!["dechrau".into()],
            },
        }],
        exclusion_groups,
        prerequisite_rules: vec![],
    }
}
