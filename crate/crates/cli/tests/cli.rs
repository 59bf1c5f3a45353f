use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use artemus_core::datasets::{load_bundled, DatasetName};
use artemus_core::model::{EntryPoint, Keywords, LocalizedText};
use artemus_core::{serialize_graph, PathwayGraph};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_artemus"));
    cmd.env_remove("ARTEMUS_DATA_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn dataset_file(name: DatasetName) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../core/data/{name}.json"))
}

fn write_graph(dir: &Path, name: &str, g: &PathwayGraph) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serialize_graph(g)).unwrap();
    path.to_string_lossy().into_owned()
}

fn housing_path() -> String {
    dataset_file(DatasetName::Housing).to_string_lossy().into_owned()
}

#[test]
fn validate_bundled_files_exit_zero() {
    for name in DatasetName::ALL {
        let path = dataset_file(name);
        let o = run(&["validate", path.to_str().unwrap(), "--strict"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stderr(&o).contains("0 error(s), 0 warning(s)"));
    }
}

#[test]
fn validate_blank_welsh_exits_one_and_lists_e004() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = load_bundled(DatasetName::Housing).unwrap();
    g.nodes[0].title.cy = String::new();
    let path = write_graph(dir.path(), "blank.json", &g);
    let o = run(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[E004] node:la-homelessness.title.cy"), "{}", stderr(&o));

    let o = run(&["validate", &path, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["publishable"], false);
    assert_eq!(report["diagnostics"][0]["code"], "E004");
}

#[test]
fn validate_non_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("notes.json");
    std::fs::write(&path, "this is not json").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("MalformedJson"));
    let o = run(&["validate", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strict_turns_warnings_into_failures() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = load_bundled(DatasetName::Housing).unwrap();
    g.nodes[2].detail = g.nodes[2].summary.clone();
    let path = write_graph(dir.path(), "warn.json", &g);
    assert_eq!(run(&["validate", &path]).status.code(), Some(0));
    let o = run(&["validate", &path, "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("warning[W001]"));
}

#[test]
fn routes_prints_the_pinned_count() {
    let o = run(&["routes", &housing_path(), "--entry", "homelessness-entry"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("16 routes"));
    assert!(out.contains("reconsideration -> county-court-appeal -> court-of-appeal-appeal => court-of-appeal"));
}

#[test]
fn routes_json_is_machine_readable() {
    let o = run(&["routes", &housing_path(), "--entry", "homelessness-entry", "--json"]);
    let set: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(set["routes"].as_array().unwrap().len(), 16);
    assert_eq!(set["truncated"], false);
    assert_eq!(set["routes"][0]["entryPointId"], "homelessness-entry");
}

#[test]
fn routes_unknown_entry_exits_one() {
    let o = run(&["routes", &housing_path(), "--entry", "nowhere"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown entry point"));
}

#[test]
fn routes_from_a_terminal_entry_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = load_bundled(DatasetName::Housing).unwrap();
    g.entry_points.push(EntryPoint {
        id: "at-ombudsman".into(),
        node: "ombudsman".into(),
        description: LocalizedText::new("Already with the Ombudsman", "Eisoes gyda'r Ombwdsmon"),
        keywords: Keywords {
            en: vec!["ombudsman".into()],
            cy: vec!["ombwdsmon".into()],
        },
    });
    let path = write_graph(dir.path(), "terminal.json", &g);
    let o = run(&["routes", &path, "--entry", "at-ombudsman"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0 routes");
}

#[test]
fn routes_depth_limit_reports_truncation() {
    let o = run(&["routes", &housing_path(), "--entry", "homelessness-entry", "--max-depth", "1"]);
    assert!(stdout(&o).lines().last().unwrap().contains("truncated at depth 1"));
}

#[test]
fn search_ranks_homelessness_first() {
    let o = run(&["search", &housing_path(), "made homeless", "--lang", "en"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.contains("homelessness-entry"), "{first}");

    let o = run(&["search", &housing_path(), "zzqv kkwx", "--lang", "en"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());

    let o = run(&["search", &housing_path(), "made homeless", "--json", "-k", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matches"].as_array().unwrap().len(), 1);
}

#[test]
fn export_dot_is_deterministic_and_names_the_ombudsman_complaint() {
    let a = run(&["export-dot", &housing_path()]);
    let b = bin().args(["export-dot", &housing_path()]).env("LC_ALL", "cy_GB.UTF-8").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dot = stdout(&a);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("-> \"ombudsman\" [id=\"ombudsman-complaint\", label=\"Complain to the Public Services Ombudsman for Wales\""));
}

#[test]
fn serve_answers_healthz() {
    let mut child = bin()
        .args(["serve", "--port", "0"])
        .stderr(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let mut lines = BufReader::new(child.stderr.take().unwrap()).lines();
    let addr = loop {
        let line = lines.next().expect("server exited").unwrap();
        if let Some(rest) = line.strip_prefix("listening on http://") {
            break rest.split_whitespace().next().unwrap().to_string();
        }
    };

    let mut stream = TcpStream::connect(&addr).unwrap();
    stream
        .write_all(b"GET /healthz HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n")
        .unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();

    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.ends_with("\r\n\r\nok"), "{response}");
}

#[test]
fn serve_refuses_a_broken_data_dir() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.json"), "{").unwrap();
    let o = bin()
        .args(["serve", "--port", "0"])
        .env("ARTEMUS_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.json"));
}
