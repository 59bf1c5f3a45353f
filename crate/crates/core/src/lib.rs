//! Redress-pathway graphs and the guided journeys built on them.
//!
//! A [`PathwayGraph`] describes bodies a person can take an issue to and the
//! actions (appeals, complaints, reviews) that lead between them, together
//! with the rules that gate those actions. The [`journey`] engine walks one
//! person through the graph, [`pathfinder`] enumerates every route by brute
//! force, and [`view`] turns a journey into something a renderer can draw.

pub mod canonical;
pub mod datasets;
pub mod dot;
pub mod journey;
pub mod model;
pub mod parallel;
pub mod parse;
pub mod pathfinder;
pub mod search;
pub mod synth;
pub mod validation;
pub mod view;

pub use canonical::{graph_hash, serialize_graph};
pub use journey::{Choice, JourneyDoc, JourneyError, LoadedGraph, OptionView};
pub use model::{
    edge_legend_tag, node_colour_token, text_for, BodyCategory, EdgeKind, Lang, LocalizedText, PathwayGraph,
};
pub use parse::{parse_graph, ParseError, NO_ACTION};
pub use validation::{is_publishable, validate, Diagnostic};
