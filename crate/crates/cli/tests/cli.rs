use std::process::{Command, Output};

use shard_order::{build_lattice, covers_up, Permutation};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shard-order"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn map_gives_the_block_structure() {
    assert_eq!(
        stdout(&["map", "26314758"]),
        "{\"n\":8,\"blocks\":[[2],[1,3,6],[4],[5,7],[8]],\"less\":[[0,1],[1,2],[1,3]]}\n"
    );
}

#[test]
fn unmap_inverts_map() {
    let json_in =
        r#"{"n":9,"blocks":[[2],[1,3],[7,9],[4,8],[5],[6]],"less":[[0,1],[2,3],[3,4],[3,5]]}"#;
    assert_eq!(stdout(&["unmap", json_in]), "\"231978456\"\n");
    for p in Permutation::all(5) {
        let word = p.to_string();
        let mapped = stdout(&["map", &word]);
        assert_eq!(stdout(&["unmap", mapped.trim()]), format!("\"{word}\"\n"));
    }
}

#[test]
fn unmap_reports_the_violated_axiom() {
    let out = run(&["unmap", r#"{"n":4,"blocks":[[1,3],[2,4]],"less":[]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(P1)"));
    let out = run(&["map", "1224"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hasse_diagrams() {
    assert_eq!(
        json(&["hasse", "--n", "1"]),
        serde_json::json!({"n": 1, "nodes": ["1"], "edges": []})
    );
    let h = json(&["hasse", "--n", "4"]);
    let expected_edges: usize = build_lattice(4)
        .unwrap()
        .elements()
        .iter()
        .map(|w| covers_up(w).len())
        .sum();
    assert_eq!(h["nodes"].as_array().unwrap().len(), 24);
    assert_eq!(h["edges"].as_array().unwrap().len(), expected_edges);
    assert_eq!(h["nodes"][0], "1234");
    assert_eq!(h["nodes"][23], "4321");
    let dot = stdout(&["hasse", "--n", "4", "--format", "dot"]);
    assert_eq!(dot, stdout(&["hasse", "--n", "4", "--format", "dot"]));
    assert_eq!(dot.matches("->").count(), expected_edges);
}

#[test]
fn size_caps() {
    let out = run(&["hasse", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    assert_eq!(run(&["map", "10,9,8,7,6,5,4,3,2,1"]).status.code(), Some(2));
    assert!(run(&["map", "10,9,8,7,6,5,4,3,2,1", "--force"])
        .status
        .success());
}

#[test]
fn verify_suites() {
    let el = json(&["verify", "--suite", "el", "--n", "4"]);
    assert_eq!(el["passed"], true);
    assert_eq!(el["facts"]["full_increasing"], 1);
    assert_eq!(el["facts"]["full_decreasing"], 13);
    assert_eq!(json(&["el-verify", "--n", "4"]), el);
    let geo = json(&["verify", "--suite", "geometry", "--n", "4"]);
    assert_eq!(geo["passed"], true);
    assert_eq!(geo["facts"]["agreements"], 24);
    let mob = json(&["verify", "--suite", "mobius", "--n", "5"]);
    assert_eq!(mob["passed"], true);
    assert_eq!(mob["facts"]["full_mobius"].as_i64().unwrap().abs(), 71);
    let all = json(&["verify", "--n", "3"]);
    assert_eq!(all.as_array().unwrap().len(), 6);
    assert_eq!(
        run(&["verify", "--suite", "bogus", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn chains_and_mobius() {
    let report = json(&["chains", "--n", "4"]);
    assert_eq!(report["increasing"], serde_json::json!([2, 2, 2]));
    assert_eq!(report["decreasing_count"], 13);
    assert_eq!(report["mobius"], -13);
    assert_eq!(stdout(&["mobius", "--n", "3", "--format", "text"]), "3\n");
    let out = run(&["mobius", "--bottom", "2134", "--top", "1243"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shards_listing() {
    let all = json(&["shards", "--n", "4"]);
    assert_eq!(all["count"], 11);
    assert_eq!(all["shards"].as_array().unwrap().len(), 11);
    let lower = json(&["shards", "--perm", "4312"]);
    assert_eq!(lower["shards"][0]["shard"], "H(3,4)[]");
    assert_eq!(lower["shards"][1]["shard"], "H(1,3)[+]");
}

#[test]
fn sortables_and_noncrossing() {
    let listing = json(&["sortable", "--coxeter", "1,2,3"]);
    assert_eq!(listing["count"], 14);
    let example = json(&[
        "sortable",
        "--coxeter",
        "2,1,3,7,6,4,5,8",
        "--perm",
        "231978456",
    ]);
    assert_eq!(
        example["cycle"],
        serde_json::json!([1, 3, 4, 5, 8, 9, 7, 6, 2])
    );
    assert_eq!(example["sortable"], false);
    let nc = json(&["noncrossing", "--coxeter", "2,1,3"]);
    assert_eq!(nc.as_array().unwrap().len(), 14);
    let partition = r#"{"n":9,"coxeter":[2,1,3,7,6,4,5,8],"blocks":[[1,2],[3,5],[4],[8,9],[6,7]]}"#;
    let w = json(&["noncrossing", "--blocks", partition]);
    assert_eq!(
        w["blocks"],
        serde_json::json!([[1, 2], [4], [3, 5], [6, 7], [8, 9]])
    );
    assert_eq!(w["less"], serde_json::json!([[1, 2]]));
    let out = run(&[
        "noncrossing",
        "--coxeter",
        "1,2,3",
        "--blocks",
        "[[1,3],[2,4]]",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("shard-order-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(
        stdout(&["hasse", "--n", "3", "--format", "dot", "--out", p]),
        ""
    );
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&["hasse", "--n", "3", "--format", "dot"]));
}
