//! Matching a free-text problem description to an entry point.
//!
//! Scoring, per entry point and language:
//!
//! * each multi-word keyword phrase whose tokens occur in the query in the
//!   same order (gaps allowed) scores [`PHRASE_WEIGHT`];
//! * each single-word keyword present anywhere in the query scores
//!   [`TOKEN_WEIGHT`].
//!
//! Keywords go through the same tokenizer as the query, so a keyword made
//! only of stop-words is ignored. Queries are never stored.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::model::{Lang, PathwayGraph};

pub const PHRASE_WEIGHT: u32 = 2;
pub const TOKEN_WEIGHT: u32 = 1;

const STOPWORDS_EN: &str = include_str!("../data/stopwords/en.txt");
const STOPWORDS_CY: &str = include_str!("../data/stopwords/cy.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchMatch {
    pub entry_point_id: String,
    pub score: u32,
    pub matched_phrases: Vec<String>,
}

fn parse_list(raw: &str) -> HashSet<String> {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn stopwords(lang: Lang) -> &'static HashSet<String> {
    static EN: OnceLock<HashSet<String>> = OnceLock::new();
    static CY: OnceLock<HashSet<String>> = OnceLock::new();
    match lang {
        Lang::En => EN.get_or_init(|| parse_list(STOPWORDS_EN)),
        Lang::Cy => CY.get_or_init(|| parse_list(STOPWORDS_CY)),
    }
}

/// Lowercase word tokens with punctuation stripped and stop-words removed.
/// Diacritics are kept: "tŷ" and "ty" are different words.
pub fn tokenize(text: &str, lang: Lang) -> Vec<String> {
    let stop = stopwords(lang);
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .filter(|w| !stop.contains(w))
        .collect()
}

/// `needle` occurs in `haystack` in order, not necessarily contiguously.
fn is_subsequence(needle: &[String], haystack: &[String]) -> bool {
    let mut rest = haystack.iter();
    needle.iter().all(|n| rest.any(|h| h == n))
}

pub fn score_entry(keywords: &[String], query: &[String], lang: Lang) -> (u32, Vec<String>) {
    let query_set: HashSet<&str> = query.iter().map(String::as_str).collect();
    let mut score = 0;
    let mut matched = Vec::new();
    for phrase in keywords {
        let tokens = tokenize(phrase, lang);
        match tokens.len() {
            0 => {}
            1 if query_set.contains(tokens[0].as_str()) => {
                score += TOKEN_WEIGHT;
                matched.push(phrase.clone());
            }
            1 => {}
            _ if is_subsequence(&tokens, query) => {
                score += PHRASE_WEIGHT;
                matched.push(phrase.clone());
            }
            _ => {}
        }
    }
    (score, matched)
}

/// Best `k` entry points for a query. Ties keep declaration order. An empty
/// result means nothing matched and the caller should offer the full list.
pub fn search(graph: &PathwayGraph, query: &str, lang: Lang, k: usize) -> Vec<SearchMatch> {
    let tokens = tokenize(query, lang);
    if tokens.is_empty() || k == 0 {
        return Vec::new();
    }
    let mut matches: Vec<SearchMatch> = graph
        .entry_points
        .iter()
        .filter_map(|ep| {
            let (score, matched_phrases) = score_entry(ep.keywords.get(lang), &tokens, lang);
            (score > 0).then(|| SearchMatch {
                entry_point_id: ep.id.clone(),
                score,
                matched_phrases,
            })
        })
        .collect();
    // Stable sort keeps declaration order among equal scores.
    matches.sort_by(|a, b| b.score.cmp(&a.score));
    matches.truncate(k);
    matches
}
