#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use artemus_core::datasets::{load_bundled, DatasetName};
use artemus_core::journey::{self, Choice, JourneyDoc, LoadedGraph, OptionView};
use artemus_core::synth::{random_graph_from_seed, SynthParams};
use artemus_core::{is_publishable, Lang, PathwayGraph};

pub fn housing() -> LoadedGraph {
    LoadedGraph::new(load_bundled(DatasetName::Housing).unwrap())
}

pub fn education() -> LoadedGraph {
    LoadedGraph::new(load_bundled(DatasetName::Education).unwrap())
}

pub fn chosen_edges(doc: &JourneyDoc) -> Vec<String> {
    doc.steps.iter().filter_map(|s| s.chosen.as_edge().map(str::to_string)).collect()
}

/// Breadth-first walk over every distinct (node, taken-edge set) state a
/// journey from `entry` can reach, calling `visit` on each non-concluded
/// state with its options. Returns the number of states visited, or `None`
/// if there were more than `limit`.
pub fn explore(
    graph: &LoadedGraph,
    entry: &str,
    limit: usize,
    mut visit: impl FnMut(&JourneyDoc, &[OptionView]),
) -> Option<usize> {
    let start = journey::start(graph, entry, Lang::En).unwrap();
    let mut seen: HashSet<(String, BTreeSet<String>)> = HashSet::new();
    let mut queue = VecDeque::from([start]);
    let mut count = 0;
    while let Some(doc) = queue.pop_front() {
        if doc.concluded {
            continue;
        }
        let key = (
            journey::current_node(graph, &doc).unwrap().to_string(),
            journey::visited_edges(&doc),
        );
        if !seen.insert(key) {
            continue;
        }
        count += 1;
        if count > limit {
            return None;
        }
        let opts = journey::options(graph, &doc).unwrap();
        visit(&doc, &opts);
        for o in opts.iter().filter(|o| o.enabled) {
            if let Choice::Edge(_) = o.choice {
                queue.push_back(journey::step(graph, &doc, &o.choice).unwrap());
            }
        }
    }
    Some(count)
}

/// The first `count` publishable graphs in seed order.
pub fn publishable_graphs(count: usize, params: &SynthParams) -> Vec<(u64, PathwayGraph)> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0;
    while out.len() < count {
        let g = random_graph_from_seed(seed, params);
        if is_publishable(&g) {
            out.push((seed, g));
        }
        seed += 1;
        assert!(seed < 200 * count as u64, "generator rarely produces publishable graphs");
    }
    out
}
