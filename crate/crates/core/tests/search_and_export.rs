use artemus_core::datasets::{load_bundled, DatasetName};
use artemus_core::dot::export_dot;
use artemus_core::search::search;
use artemus_core::Lang;

fn top(name: DatasetName, query: &str, lang: Lang) -> Option<String> {
    let g = load_bundled(name).unwrap();
    search(&g, query, lang, 5).into_iter().next().map(|m| m.entry_point_id)
}

#[test]
fn homelessness_query_ranks_the_homelessness_entry_first() {
    assert_eq!(
        top(DatasetName::Housing, "I have just been made homeless", Lang::En).as_deref(),
        Some("homelessness-entry")
    );
    assert_eq!(top(DatasetName::Housing, "made homeless", Lang::En).as_deref(), Some("homelessness-entry"));
}

#[test]
fn welsh_queries_use_welsh_keywords() {
    assert_eq!(
        top(DatasetName::Housing, "Rydw i newydd gael fy ngwneud yn ddigartref", Lang::Cy).as_deref(),
        Some("homelessness-entry")
    );
    assert_eq!(top(DatasetName::Housing, "Cefais wasanaeth gwael", Lang::Cy).as_deref(), Some("service-complaint-entry"));
    assert_eq!(
        top(DatasetName::Education, "Cafodd fy mhlentyn ei wahardd yn barhaol", Lang::Cy).as_deref(),
        Some("permanent-exclusion-entry")
    );
    // English keywords are not consulted for a Welsh search.
    assert_eq!(top(DatasetName::Housing, "made homeless", Lang::Cy), None);
}

#[test]
fn service_complaints_route_to_the_complaints_entry() {
    assert_eq!(
        top(DatasetName::Housing, "Someone was rude and gave me the wrong information", Lang::En).as_deref(),
        Some("service-complaint-entry")
    );
}

#[test]
fn permanent_and_fixed_term_exclusions_are_told_apart() {
    let g = load_bundled(DatasetName::Education).unwrap();
    let matches = search(&g, "my child was permanently excluded", Lang::En, 5);
    assert_eq!(matches[0].entry_point_id, "permanent-exclusion-entry");
    assert!(matches.iter().skip(1).all(|m| m.score < matches[0].score));

    assert_eq!(
        top(DatasetName::Education, "my son was sent home for a few days", Lang::En).as_deref(),
        Some("fixed-term-exclusion-short-entry")
    );
    assert_eq!(
        top(DatasetName::Education, "a long fixed term exclusion", Lang::En).as_deref(),
        Some("fixed-term-exclusion-long-entry")
    );
}

#[test]
fn gibberish_and_empty_queries_match_nothing() {
    for name in DatasetName::ALL {
        let g = load_bundled(name).unwrap();
        assert!(search(&g, "qwzx vbnm plokij", Lang::En, 5).is_empty());
        assert!(search(&g, "", Lang::Cy, 5).is_empty());
        assert!(search(&g, "the and of", Lang::En, 5).is_empty());
        assert!(search(&g, "homeless excluded", Lang::En, 0).is_empty());
    }
}

#[test]
fn k_bounds_the_result_count() {
    let g = load_bundled(DatasetName::Education).unwrap();
    let q = "fixed term exclusion excluded permanently";
    assert!(search(&g, q, Lang::En, 5).len() >= 2);
    assert_eq!(search(&g, q, Lang::En, 1).len(), 1);
}

#[test]
fn dot_export_lists_every_node_and_edge() {
    let g = load_bundled(DatasetName::Housing).unwrap();
    let dot = export_dot(&g);
    assert!(dot.starts_with("digraph \"housing\" {\n"));
    assert!(dot.ends_with("}\n"));
    assert!(dot.contains("label=\"Complain to the Public Services Ombudsman for Wales\""));
    assert!(dot.contains("\"ombudsman\" [label=\"Public Services Ombudsman for Wales\", class=\"cat-ombudsman\""));
    assert!(dot.contains("\"la-homelessness\" -> \"la-review\" [id=\"reconsideration\""));
    assert_eq!(dot.matches(" -> ").count(), g.edges.len());
    for n in &g.nodes {
        assert!(dot.contains(&format!("  \"{}\" [label=", n.id)), "{}", n.id);
    }
    assert_eq!(export_dot(&g), dot);
}

#[test]
fn dot_export_escapes_titles() {
    let mut g = load_bundled(DatasetName::Education).unwrap();
    g.nodes[0].title.en = "The \"school\"\nboard".into();
    let dot = export_dot(&g);
    assert!(dot.contains(r#"label="The \"school\"\nboard""#));
}
