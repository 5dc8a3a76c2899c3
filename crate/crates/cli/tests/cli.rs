use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn solgraph(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_solgraph"));
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.env_remove("SOLGRAPH_CACHE_DIR").args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn analyze_a5_json() {
    let o = solgraph(&["--format", "json", "analyze", "A5"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["ps"], "11/30");
    assert_eq!(v["order"], 60);
    assert_eq!(v["edges_formula"], 571);
    assert_eq!(v["graph"]["edges"], 571);
    assert_eq!(v["graph"]["girth"], 3);
    assert_eq!(v["degrees"]["min_degree"], 8);
}

#[test]
fn analyze_markdown_and_csv() {
    let md = solgraph(&["analyze", "PSL(2,7)"], None);
    assert!(md.status.success());
    assert!(stdout(&md).contains("| ps | 9/28 |"), "{}", stdout(&md));
    let csv = solgraph(&["--format", "csv", "analyze", "PSL(2,7)"], None);
    assert!(stdout(&csv).lines().any(|l| l == "ps,9/28"), "{}", stdout(&csv));
}

#[test]
fn analyze_exports_graph_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("a5.edges");
    let cert = dir.path().join("a5.cert");
    let o = solgraph(
        &["analyze", "A5", "--export-graph", edges.to_str().unwrap(), "--export-certificate", cert.to_str().unwrap()],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&edges).unwrap();
    let g = solgraph::graph::parse_edge_list(&text).unwrap();
    assert_eq!((g.n(), g.edge_count()), (59, 571));
    assert!(!std::fs::read_to_string(&cert).unwrap().trim().is_empty());
}

#[test]
fn soluble_group_is_reported() {
    let o = solgraph(&["--format", "json", "analyze", "S4"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["soluble"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(solgraph(&["analyze", "Q8 x ?"], None).status.code(), Some(2));
    assert_eq!(solgraph(&["verify", "--claim", "NOPE"], None).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("a7.edges");
    let o = solgraph(&["analyze", "A7", "--export-graph", edges.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert_eq!(solgraph(&["iso", "A5", "S4"], None).status.code(), Some(3));
}

#[test]
fn verify_single_claim() {
    let o = solgraph(&["--format", "json", "--no-timings", "verify", "--claim", "P3.6i", "--group", "A5"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["status"], "holds");
    assert_eq!(results[0]["witness"]["formula"], 571);
    assert_eq!(results[0]["ms"], 0);
}

#[test]
fn claims_listing() {
    let o = solgraph(&["--format", "json", "claims"], None);
    let v = json(&o);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), solgraph::verifier::CLAIMS.len());
    assert!(ids.contains(&"B11/30"));
}

#[test]
fn iso_sl25_and_a5_times_c2() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.txt");
    let o = solgraph(
        &["--format", "json", "iso", "SL(2,5)", "A5 x C2", "--bijection", map.to_str().unwrap(), "--relabel-trials", "2"],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["bijection_verified"], true);
    assert_eq!(v["relabel_trials"]["all_identical"], true);
    let lines = std::fs::read_to_string(&map).unwrap();
    assert_eq!(lines.lines().filter(|l| !l.starts_with('#')).count(), 118);
}

#[test]
fn iso_rejects_different_graphs() {
    let o = solgraph(&["--format", "json", "iso", "A5", "PSL(2,7)"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["isomorphic"], false);
}

#[test]
fn cache_warm_rerun_hits_and_matches() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "analyze", "SL(2,5)"];
    let cold = solgraph(&args, Some(dir.path()));
    assert!(cold.status.success(), "{}", stderr(&cold));
    assert!(stderr(&cold).contains("0 hits"), "{}", stderr(&cold));
    let warm = solgraph(&args, Some(dir.path()));
    assert!(!stderr(&warm).contains(" 0 hits"), "{}", stderr(&warm));
    assert!(stderr(&warm).contains("0 misses"), "{}", stderr(&warm));
    assert_eq!(stdout(&cold), stdout(&warm));
    let check = solgraph(&["--verify-cache", "analyze", "SL(2,5)"], Some(dir.path()));
    assert!(check.status.success(), "{}", stderr(&check));
    assert!(stderr(&check).contains("0 mismatched"), "{}", stderr(&check));
}

#[test]
fn corrupted_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "analyze", "A5"];
    let cold = solgraph(&args, Some(dir.path()));
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "{ not json").unwrap();
    }
    let again = solgraph(&args, Some(dir.path()));
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(stdout(&cold), stdout(&again));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.md");
    let o = solgraph(&["--no-timings", "-o", out.to_str().unwrap(), "verify", "--claim", "P3.7", "--group", "A5"], None);
    assert!(o.status.success());
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.starts_with("# Verification report"));
    assert_eq!(stdout(&o).trim_end(), written.trim_end());
}
