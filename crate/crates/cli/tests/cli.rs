//! CLI behavior: verb output shapes, round trips, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_acyclic-spectra"))
}

fn tmpfile(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("acyclic-spectra-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn gen_to_file(name: &str, args: &[&str]) -> PathBuf {
    let out = run(args);
    assert!(out.status.success());
    tmpfile(name, &stdout(&out))
}

#[test]
fn gen_analyze_round_trip_whirl() {
    let path = gen_to_file("w31.graph", &["gen", "whirl", "3", "1"]);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n=10"), "{text}");
    assert!(text.contains("p=4"), "{text}");
    assert!(text.contains("d=4"), "{text}");
    assert!(text.contains("whirl=(3,1)"), "{text}");
}

#[test]
fn analyze_figure6_parameters() {
    let path = gen_to_file("fig6.graph", &["gen", "figure6"]);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p=3"), "{text}");
    assert!(text.contains("M_upper=3"), "{text}");
    // longest path 3-1-6-7-2-9 has five edges
    assert!(text.contains("d=5"), "{text}");
    assert!(text.contains("q_lower=6"), "{text}");
}

#[test]
fn analyze_path_of_five() {
    let path = gen_to_file("p5.graph", &["gen", "path", "5"]);
    let out = run(&["analyze", path.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("p=1"), "{text}");
    assert!(text.contains("d=4"), "{text}");
    assert!(text.contains("q_lower=5"), "{text}");
}

#[test]
fn analyze_whirl32_includes_the_sharper_bound() {
    let path = gen_to_file("w32.graph", &["gen", "whirl", "3", "2"]);
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["q_lower"], 8);
    assert_eq!(parsed["whirl"]["k"], 3);
    assert_eq!(parsed["whirl"]["l"], 2);
    assert_eq!(parsed["d"], 6);
}

#[test]
fn eig_json_shape() {
    let path = gen_to_file("star.mat", &["gen", "star", "5", "--adjacency"]);
    let out = run(&["eig", path.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(parsed["charpoly"].is_string());
    assert!(parsed["q"].is_u64());
    let groups = parsed["groups"].as_array().unwrap();
    assert_eq!(parsed["q"].as_u64().unwrap() as usize, groups.len());
    for g in groups {
        assert!(g["mult"].is_u64());
        let root = &g["root"];
        assert!(
            root.is_string() || (root["lo"].is_string() && root["hi"].is_string()),
            "root locator is an exact string or a lo/hi interval: {root}"
        );
    }
    // K_{1,4}: kernel of multiplicity 3 located exactly at 0
    assert!(groups.iter().any(|g| g["mult"] == 3 && g["root"] == "0"));
}

#[test]
fn snf_json_invariant_factors() {
    let m = "2 2\nx - 1\n0\n0\nx - 2\n";
    let path = tmpfile("diag.pm", m);
    let out = run(&["snf", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let factors: Vec<&str> = parsed["invariant_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(factors, vec!["1", "x^2 - 3*x + 2"]);
    assert_eq!(parsed["verified"], true);
}

#[test]
fn screen_exit_codes() {
    let path = gen_to_file("fig2.graph", &["gen", "figure2"]);
    let ok = run(&["screen", path.to_str().unwrap(), "1,2,4,2,1"]);
    assert_eq!(ok.status.code(), Some(0));
    let fail = run(&["screen", path.to_str().unwrap(), "5,2,1,1,1"]);
    assert_eq!(fail.status.code(), Some(1));
    let garbage = run(&["screen", path.to_str().unwrap(), "1,x,3"]);
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn parse_and_connectivity_exit_codes() {
    let bad = tmpfile("bad.graph", "not a graph\n");
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let disconnected = tmpfile("disc.graph", "4\n1 2\n3 4\n");
    let out = run(&["analyze", disconnected.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let missing = run(&["analyze", "/nonexistent/file.graph"]);
    assert_eq!(missing.status.code(), Some(6));

    let unknown_claim = run(&["audit", "thm-9.9"]);
    assert_eq!(unknown_claim.status.code(), Some(5));

    let bad_family = run(&["gen", "moebius", "3"]);
    assert_eq!(bad_family.status.code(), Some(5));
}

#[test]
fn size_cap_env_override() {
    let path = gen_to_file("w22.graph", &["gen", "whirl", "2", "2"]);
    // n = 11 exceeds a forced tiny cap
    let out = bin()
        .args(["screen", path.to_str().unwrap(), "1,1,1,1,1,1,1,1,1,1,1"])
        .env("ACYCLIC_SPECTRA_MAX_N", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    // default cap admits it
    let out = run(&["screen", path.to_str().unwrap(), "1,1,1,1,1,1,1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn audit_single_claim_json() {
    let out = run(&["audit", "ex-3.6", "--seeds", "2", "--json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = parsed.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["claim"], "ex-3.6");
    assert_eq!(reports[0]["passed"], true);
    assert!(reports[0]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn audit_list_claims() {
    let out = run(&["audit", "all", "--list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for id in [
        "thm-2.3", "thm-3.3", "cor-3.4", "cor-3.5", "cor-4.1", "thm-5.1", "lem-5.3", "thm-5.2",
        "thm-5.4", "thm-6.1", "ex-3.6",
    ] {
        assert!(text.contains(id), "missing {id}");
    }
}

#[test]
fn gen_figure14_via_host_file() {
    let host = gen_to_file("c6.graph", &["gen", "cycle", "6"]);
    let out = run(&[
        "gen",
        "figure14",
        "--host",
        host.to_str().unwrap(),
        "--anchors",
        "1,3,5",
        "--ell",
        "2",
    ]);
    assert!(out.status.success());
    let graph = tmpfile("fig14.graph", &stdout(&out));
    let analyzed = run(&["analyze", graph.to_str().unwrap()]);
    assert!(analyzed.status.success());
    assert!(stdout(&analyzed).contains("n=18"));

    // anchor condition violations are parameter errors
    let host4 = gen_to_file("c4p.graph", &["gen", "cycle", "4"]);
    let mut with_pendant = std::fs::read_to_string(&host4).unwrap();
    with_pendant = with_pendant.replacen('4', "5", 1) + "1 5\n";
    let host4 = tmpfile("c4pendant.graph", &with_pendant);
    let out = run(&[
        "gen",
        "figure14",
        "--host",
        host4.to_str().unwrap(),
        "--anchors",
        "5,1,3",
        "--ell",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn stdin_dash_input() {
    let out = run(&["gen", "figure2", "--adjacency"]);
    let matrix = stdout(&out);
    let mut child = bin()
        .args(["eig", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(matrix.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["q"], 5);
}
