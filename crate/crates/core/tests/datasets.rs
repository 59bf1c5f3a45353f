mod common;

use artemus_core::datasets::{bundled, load_bundled, DatasetName};
use artemus_core::journey::{self, Choice, ReasonCode};
use artemus_core::pathfinder::{enumerate_routes, RouteOptions};
use artemus_core::{parse_graph, serialize_graph, validate, BodyCategory, EdgeKind, Lang};

const HOUSING_HASH: &str = "5973a86012880d097064c5617d5a19940d4af069e02f92361ad1a681e5821412";
const EDUCATION_HASH: &str = "79d8d92571b7a0e65f9298f8fca17271aff3e9589c3b88b0a8c60bb3e07d355d";

#[test]
fn pinned_content_hashes() {
    assert_eq!(bundled(DatasetName::Housing).unwrap().content_hash, HOUSING_HASH);
    assert_eq!(bundled(DatasetName::Education).unwrap().content_hash, EDUCATION_HASH);
}

#[test]
fn both_datasets_validate_without_any_diagnostic() {
    for name in DatasetName::ALL {
        let g = load_bundled(name).unwrap();
        assert_eq!(validate(&g), vec![], "{name}");
    }
}

#[test]
fn parse_serialize_parse_is_identity() {
    for name in DatasetName::ALL {
        let once = load_bundled(name).unwrap();
        let bytes = serialize_graph(&once);
        assert_eq!(bytes, name.bytes());
        assert_eq!(parse_graph(&bytes).unwrap(), once);
    }
}

#[test]
fn disclaimers_carry_the_illustrative_banner() {
    for name in DatasetName::ALL {
        let g = load_bundled(name).unwrap();
        assert!(g.disclaimer.en.starts_with("ILLUSTRATIVE"), "{name}");
        assert!(!g.disclaimer.cy.is_empty());
    }
}

#[test]
fn housing_contains_the_case_study_structure() {
    let g = load_bundled(DatasetName::Housing).unwrap();

    let la = g.node("la-homelessness").unwrap();
    assert_eq!(la.category, BodyCategory::LocalAuthority);
    let reconsideration = g.edge("reconsideration").unwrap();
    assert_eq!(reconsideration.kind, EdgeKind::InternalReview);
    assert_eq!(reconsideration.from, "la-homelessness");
    assert_eq!(reconsideration.to, "la-review");

    // Both County Court appeals are gated on the reconsideration.
    for id in ["county-court-appeal", "county-court-appeal-without-review"] {
        let e = g.edge(id).unwrap();
        assert_eq!((e.kind, e.to.as_str()), (EdgeKind::Appeal, "county-court"));
        assert!(g
            .prerequisite_rules
            .iter()
            .any(|r| r.edge == id && r.requires == ["reconsideration"]));
    }

    let coa = g.edge("court-of-appeal-appeal").unwrap();
    assert_eq!((coa.from.as_str(), coa.to.as_str()), ("county-court", "court-of-appeal"));
    assert_eq!(g.node("court-of-appeal").unwrap().title.en, "England and Wales Court of Appeal");

    let jr = g.edge("judicial-review-of-county-court").unwrap();
    assert_eq!(jr.kind, EdgeKind::JudicialReview);
    assert_eq!(jr.to, "administrative-court");
    assert_eq!(jr.time_limit_days, Some(90));
    assert!(jr.pre_action_protocol);
    assert!(jr.explanation.en.contains("This route is rarely used"));

    let omb = g.edge("ombudsman-complaint").unwrap();
    assert_eq!(omb.kind, EdgeKind::Complaint);
    assert_eq!(g.node(&omb.to).unwrap().title.en, "Public Services Ombudsman for Wales");
    assert!(omb.explanation.en.contains("treated unfairly or received a bad service"));
    let group = g.exclusion_groups.iter().find(|x| x.id == "court-or-ombudsman").unwrap();
    for id in ["ombudsman-complaint", "county-court-appeal", "county-court-appeal-without-review"] {
        assert!(group.members.iter().any(|m| m == id), "{id}");
    }

    assert!(g.nodes.iter().filter(|n| n.category == BodyCategory::Outcome).count() >= 1);
}

#[test]
fn education_contains_the_case_study_structure() {
    let g = load_bundled(DatasetName::Education).unwrap();
    assert_eq!(g.node("governing-body").unwrap().category, BodyCategory::School);
    assert_eq!(g.node("exclusion-appeal-panel").unwrap().category, BodyCategory::Tribunal);
    assert_eq!(g.node("education-tribunal").unwrap().title.en, "Education Tribunal for Wales");

    let permanent = g.entry_point("permanent-exclusion-entry").unwrap();
    let long = g.entry_point("fixed-term-exclusion-long-entry").unwrap();
    let short = g.entry_point("fixed-term-exclusion-short-entry").unwrap();
    assert_ne!(permanent.node, long.node);
    assert_ne!(long.node, short.node);
    for fixed in [long, short] {
        assert!(fixed.description.en.contains("ILLUSTRATIVE"));
        assert!(g.node(&fixed.node).unwrap().summary.en.contains("ILLUSTRATIVE"));
    }
}

#[test]
fn pinned_route_counts() {
    let expected = [
        (DatasetName::Housing, "homelessness-entry", 16),
        (DatasetName::Housing, "service-complaint-entry", 2),
        (DatasetName::Education, "permanent-exclusion-entry", 9),
        (DatasetName::Education, "fixed-term-exclusion-long-entry", 4),
        (DatasetName::Education, "fixed-term-exclusion-short-entry", 4),
    ];
    for (name, entry, count) in expected {
        let g = load_bundled(name).unwrap();
        let set = enumerate_routes(&g, entry, RouteOptions::default()).unwrap();
        assert!(!set.truncated);
        assert_eq!(set.routes.len(), count, "{name}/{entry}");
    }
}

#[test]
fn narrative_routes_are_enumerable() {
    let g = load_bundled(DatasetName::Housing).unwrap();
    let routes = enumerate_routes(&g, "homelessness-entry", RouteOptions::default()).unwrap().routes;
    let has = |edges: &[&str]| routes.iter().any(|r| r.edges == edges);

    assert!(has(&["reconsideration", "county-court-appeal", "court-of-appeal-appeal"]));
    assert!(has(&["reconsideration", "county-court-appeal", "judicial-review-of-county-court"]));
    assert!(has(&["ombudsman-complaint"]));

    for r in &routes {
        let appeal = r.edges.iter().any(|id| g.edge(id).unwrap().kind == EdgeKind::Appeal);
        let ombudsman = r.edges.iter().any(|id| g.edge(id).unwrap().to == "ombudsman");
        assert!(!(appeal && ombudsman), "{:?}", r.edges);
    }
}

#[test]
fn the_homelessness_decision_point_offers_twelve_options() {
    let g = common::housing();
    let doc = journey::start(&g, "homelessness-entry", Lang::En).unwrap();
    let opts = journey::options(&g, &doc).unwrap();
    assert_eq!(opts.len(), 12);

    let by_id = |id: &str| opts.iter().find(|o| o.choice == Choice::edge(id)).unwrap();
    assert!(by_id("reconsideration").enabled);
    let appeal = by_id("county-court-appeal-without-review");
    assert!(!appeal.enabled);
    assert_eq!(appeal.reason.as_ref().unwrap().code, ReasonCode::PrerequisiteUnmet);
    assert!(by_id("judicial-review-of-authority").disclaimer_required);
}

#[test]
fn legal_claims_repeat_the_disclaimer_and_courts_require_it() {
    for name in DatasetName::ALL {
        let g = load_bundled(name).unwrap();
        for e in g.edges.iter().filter(|e| e.kind.is_legal_claim()) {
            assert!(e.disclaimer_required && e.time_limit_days.is_some(), "{name}/{}", e.id);
        }
        for n in g.nodes.iter().filter(|n| matches!(n.category, BodyCategory::Court | BodyCategory::Tribunal)) {
            assert!(n.disclaimer_required, "{name}/{}", n.id);
        }
    }
}
