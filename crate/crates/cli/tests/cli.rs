use std::path::Path;
use std::process::{Command, Output};

use ordered_ramsey::block_coloring::BlockColoring;
use ordered_ramsey::matrix_patterns::ExtremalResult;
use ordered_ramsey::ramsey::BoundReport;
use ordered_ramsey::{EdgeColoring, OrderedGraph, RamseyResult};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn cli(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordered-ramsey"))
        .args(args)
        .arg("--cache")
        .arg(cache)
        .env_remove("ORDERED_RAMSEY_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses the output as `T` and checks that it serializes back to the same JSON.
fn round_trip<T: Serialize + DeserializeOwned>(out: &Output) -> T {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(out);
    let value: T = serde_json::from_str(&text).unwrap();
    let raw: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&value).unwrap(), raw);
    value
}

#[test]
fn outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");

    let g: OrderedGraph = round_trip(&cli(&["graph", "gen", "alternating", "6"], &cache));
    assert_eq!(g, OrderedGraph::alternating_path(6));
    let graph = dir.path().join("alt6.json");
    std::fs::write(&graph, serde_json::to_string(&g).unwrap()).unwrap();
    let graph = graph.to_str().unwrap();

    let grid: BlockColoring = round_trip(&cli(&["construct", "fig3"], &cache));
    assert_eq!(grid.k(), 4);
    let c: EdgeColoring = round_trip(&cli(&["construct", "fig3", "--expand", "2"], &cache));
    assert_eq!(c.n(), 8);
    let _: EdgeColoring = round_trip(&cli(&["construct", "nested", "2", "3"], &cache));
    let _: BlockColoring = round_trip(&cli(&["construct", "tcolor2", "3"], &cache));

    let report: BoundReport = round_trip(&cli(&["ramsey", "bounds", graph], &cache));
    assert_eq!(report.best_lower(), Some(11));

    let p4 = r#"{"n":4,"edges":[[0,3],[1,2],[1,3]]}"#;
    let r: RamseyResult = round_trip(&cli(&["ramsey", "exact", p4, "--no-cache"], &cache));
    assert_eq!(r.status.exact(), Some(7));
    assert!(r.verify().unwrap());

    let ex: ExtremalResult = round_trip(&cli(
        &[
            "matrix",
            "ex",
            r#"{"rows":2,"cols":2,"ones":[[0,1],[1,0],[1,1]]}"#,
            "--m",
            "3",
            "--n",
            "3",
        ],
        &cache,
    ));
    assert_eq!(ex.value, 5);

    let info: Value = round_trip(&cli(&["graph", "info", graph], &cache));
    assert_eq!(info["interval_chromatic"], 2);
    assert_eq!(info["stitched"], true);
}

#[test]
fn cache_hits_match_cold_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let g = r#"{"n":4,"edges":[[0,3],[1,2]]}"#;
    let cold = cli(&["ramsey", "exact", g], &cache);
    assert!(cold.status.success());
    let warm = cli(&["ramsey", "exact", g], &cache);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
    assert_eq!(warm.stdout, cold.stdout);
    let fresh = cli(&["ramsey", "exact", g, "--no-cache"], &cache);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["proof_stats"]["wall_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(&fresh), strip(&cold));

    let records = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(records.lines().count(), 1);
    let record: Value = serde_json::from_str(records.lines().next().unwrap()).unwrap();
    assert!(record["version"].is_string() && record["timestamp"].is_u64());

    assert!(records.contains("\"value\":6"));
    std::fs::write(&cache, records.replace("\"value\":6", "\"value\":7")).unwrap();
    let rejected = cli(&["ramsey", "exact", g], &cache);
    assert_eq!(rejected.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("corrupt cache record"));
}

#[test]
fn reproductions() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let out = cli(&["repro", "prop3"], &cache);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "PASS");
    assert!(!cache.exists(), "repro must not touch the cache");
    assert_eq!(cli(&["repro", "thm7"], &cache).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");

    let none = cli(&["patterns", "search", "--size", "6", "--avoid", "2"], &cache);
    assert_eq!(none.status.code(), Some(1));
    assert!(stdout(&none).contains("none (exhausted)"));
    let some = cli(&["patterns", "search", "--size", "5", "--avoid", "3,4"], &cache);
    assert_eq!(some.status.code(), Some(0));

    let coloring = dir.path().join("fig3.json");
    std::fs::write(&coloring, cli(&["construct", "fig3", "--expand", "2"], &cache).stdout).unwrap();
    let coloring = coloring.to_str().unwrap();
    let stitched = r#"{"n":6,"edges":[[0,3],[1,3],[1,5],[2,4],[2,5]]}"#;
    assert_eq!(cli(&["verify", coloring, stitched], &cache).status.code(), Some(0));
    let dense = r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2]]}"#;
    let hit = cli(&["verify", coloring, dense], &cache);
    assert_eq!(hit.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&hit)).unwrap();
    assert_eq!(v["free"], false);
    assert!(v["embedding"].is_array());

    assert_eq!(cli(&["graph", "gen", "nested", "2"], &cache).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"], &cache).status.code(), Some(2));
    assert_eq!(
        cli(
            &["contains", r#"{"n":2,"edges":[[1,0]]}"#, "{\"n\":1,\"edges\":[]}"],
            &cache
        )
        .status
        .code(),
        Some(2)
    );
    let budget = cli(
        &[
            "ramsey",
            "exact",
            r#"{"n":5,"edges":[[0,4],[1,3]]}"#,
            "--budget",
            "5",
            "--no-cache",
        ],
        &cache,
    );
    assert_eq!(budget.status.code(), Some(3));
    assert!(budget.stdout.is_empty());
}

#[test]
fn worker_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let g = r#"{"n":3,"edges":[[0,1],[1,2]]}"#;
    let run = |extra: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_ordered-ramsey"))
            .args(["ramsey", "exact", g, "--no-cache"])
            .args(extra)
            .env("ORDERED_RAMSEY_WORKERS", "3")
            .current_dir(dir.path())
            .output()
            .unwrap();
        String::from_utf8(out.stderr).unwrap()
    };
    assert!(run(&[]).contains("with 3 worker(s)"));
    assert!(run(&["--workers", "2"]).contains("with 2 worker(s)"));
}
