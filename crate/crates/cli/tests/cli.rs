use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcg"))
        .args(args)
        .env("RC_BUDGET_SECONDS", "60")
        .output()
        .expect("rcg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_for(name: &str) -> Value {
    let o = rcg(&["schema", name]);
    assert_eq!(o.status.code(), Some(0), "schema {name}");
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Runs with `--json`, checks the exit code, and validates stdout against the published schema.
fn json_run(schema: &str, args: &[&str], code: i32) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = rcg(&full);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema_for(schema)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{v:#}");
    v
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spec_examples() {
    let o = rcg(&["nonexist", "--r", "5", "--c", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["kind"], "bad_links");

    let o = rcg(&["circulant", "--r", "10", "--c", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mod 3"));

    let o = rcg(&["smallest", "--r", "4", "--c", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("order 6"));
    let g = rcgraph::graph6::decode(lines.next().unwrap()).unwrap();
    assert!(rcgraph::canon::are_isomorphic(&g, &rcgraph::families::octahedron()));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rcg(&["search", "--n", "4", "--r", "3", "--c", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(rcg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rcg(&["verify", "/nonexistent/file.g6"]).status.code(), Some(2));
    assert_eq!(rcg(&["orbits", "--n", "6", "--s", "4"]).status.code(), Some(2));
    assert_eq!(rcg(&["schema", "nope"]).status.code(), Some(2));
}

#[test]
fn domain_failures_exit_1() {
    assert_eq!(rcg(&["nonexist", "--r", "5", "--c", "10"]).status.code(), Some(1));
    assert_eq!(rcg(&["fact2", "--r", "3", "--c", "2"]).status.code(), Some(1));
    assert_eq!(rcg(&["smallest", "--r", "3", "--c", "2", "--n-max", "8"]).status.code(), Some(1));
}

#[test]
fn json_outputs_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "in.g6", "C~\nBg\nE]~o\n");
    let v = json_run("verify", &["verify", &file], 0);
    assert_eq!(v["graphs"][0]["signature"]["r"], 3);
    assert!(v["graphs"][1]["signature"].is_null());

    let v = json_run("search", &["search", "--n", "6", "--r", "3", "--c", "0", "--all"], 0);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 1);
    let v = json_run("smallest", &["smallest", "--r", "3", "--c", "1"], 0);
    assert_eq!(v["order"], 6);
    let v = json_run("smallest", &["smallest", "--r", "3", "--c", "2", "--n-max", "6"], 1);
    assert!(v["order"].is_null());
    let v = json_run("circulant", &["circulant", "--r", "6", "--c", "6"], 0);
    assert_eq!(v["jumps"], serde_json::json!([1, 2, 4]));
    let v = json_run("orbits", &["orbits", "--n", "12", "--s", "1,3,4,6"], 0);
    assert_eq!(v["link_edges"], 10);
    json_run("nonexist", &["nonexist", "--r", "6", "--c", "11"], 0);
    json_run("nonexist", &["nonexist", "--r", "5", "--c", "2", "--planar"], 0);
    json_run("nonexist", &["nonexist", "--r", "4", "--c", "4", "--planar"], 1);

    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let k2 = write(dir.path(), "k2.g6", "A_\n");
    let v = json_run("product", &["product", &k3, &k2], 0);
    assert_eq!(v["signature"], serde_json::json!({"r": 3, "c": 1}));
    let c6 = write(dir.path(), "c6.g6", &rcgraph::graph6::encode(&rcgraph::families::cycle(6).unwrap()));
    let v = json_run("complement", &["complement", &c6], 0);
    assert_eq!(v["graphs"][0]["signature"], serde_json::json!({"r": 3, "c": 1}));
    let v = json_run("fact2", &["fact2", "--r", "5", "--c", "4"], 0);
    assert_eq!(v["n"], 12);

    let db = dir.path().join("db.jsonl");
    let db = db.to_str().unwrap();
    let v = json_run("catalog-ingest", &["catalog", "--db", db, "ingest", &file, "--source", "test"], 0);
    assert_eq!((v["accepted"].as_u64(), v["rejected"].as_u64()), (Some(2), Some(1)));
    let v = json_run("catalog-query", &["catalog", "--db", db, "query", "--r", "3"], 0);
    assert_eq!(v["records"].as_array().unwrap().len(), 1);
    json_run("catalog-spectrum", &["catalog", "spectrum", "--r", "5"], 0);

    let o = rcg(&["catalog", "--db", db, "export"]);
    let validator = jsonschema::validator_for(&schema_for("catalog-export")).unwrap();
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(validator.is_valid(&v), "{line}");
    }
}

#[test]
fn catalog_round_trip_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("db.jsonl");
    let db = db.to_str().unwrap();
    let file = write(dir.path(), "in.g6", "C~\nC~\nE]~o\n");
    let o = rcg(&["catalog", "--db", db, "ingest", &file]);
    assert_eq!(stdout(&o).trim(), "accepted 2 rejected 0 duplicates 1 malformed 0");
    let csv = stdout(&rcg(&["catalog", "--db", db, "export", "--format", "csv"]));
    assert!(csv.starts_with("id,g6,n,r,c,planar,"));
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.contains("C~"));
    assert_eq!(rcg(&["catalog", "ingest", &file]).status.code(), Some(2));
}

#[test]
fn seed_spectrum_matches_small_table() {
    let o = rcg(&["catalog", "spectrum", "--r", "5"]);
    let cs: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(cs, ["0", "1", "2", "3", "4", "5", "6", "10"]);
    let o = rcg(&["catalog", "spectrum", "--r", "3"]);
    assert_eq!(stdout(&o), "0\t6\n1\t6\n3\t4\n");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = rcg(&["--threads", "1", "search", "--n", "9", "--r", "4", "--c", "2", "--all"]);
    let b = rcg(&["--threads", "4", "search", "--n", "9", "--r", "4", "--c", "2", "--all"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let c = rcg(&["orbits", "--n", "12", "--s", "1,3,4,6"]);
    let d = rcg(&["orbits", "--n", "12", "--s", "1,3,4,6"]);
    assert_eq!(c.stdout, d.stdout);
}
