//! End-to-end checks of the anosov-lab binary: exit codes, format
//! contracts, determinism and DOT well-formedness.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anosov-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anosov-lab"))
        .args(args)
        .env("ANOSOV_LAB_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 output")
}

#[test]
fn orbits_happy_path_json() {
    let out = run(&["orbits", "--matrix", "2,1;1,1", "--max-period", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["total_orbits"], "8");
    assert_eq!(v["orbits"].as_array().unwrap().len(), 8);
    // Meta block embeds matrix, version, framing convention and bounds.
    assert_eq!(v["meta"]["matrix"], "2,1;1,1");
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert!(v["meta"]["framing_convention"].as_str().unwrap().contains("fiber framing"));
    assert_eq!(v["meta"]["bounds"]["max_period"], 3);
}

#[test]
fn orbits_tsv_fixed_header() {
    let out = run(&["orbits", "--matrix", "2,1;1,1", "--max-period", "2", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("period\tfixed_points\tleast_period_points\torbit_count\n"));
    assert!(text.contains("orbit_id\tperiod\trepresentative\n"));
}

#[test]
fn non_hyperbolic_input_exits_two_with_diagnostic() {
    let out = run(&["orbits", "--matrix", "1,1;0,1", "--max-period", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("not hyperbolic"), "stderr was: {err}");
    assert!(err.contains("|trace| = 2"), "diagnostic names the violated invariant: {err}");
}

#[test]
fn malformed_matrices_never_panic() {
    for bad in [
        "", "2,1", "a,b;c,d", "2,1;1", "2,1;1,1;3,4", "2;1", "2,1,1;1,1,1", "--;--",
        "1.5,0;0,1.5", "NaN,1;1,1",
    ] {
        let out = run(&["orbits", "--matrix", bad, "--max-period", "2"]);
        assert_eq!(out.status.code(), Some(2), "input {bad:?} must exit 2");
        assert!(!stderr(&out).contains("panicked"), "no panic for {bad:?}");
    }
}

#[test]
fn reversible_cat_and_rejections() {
    let out = run(&["reversible", "--matrix", "2,1;1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reversible"], true);
    assert_eq!(v["witness"]["verified"], true);

    // Symmetric hyperbolic matrix: reversible as well.
    let sym = run(&["reversible", "--matrix", "5,2;2,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&sym)).unwrap();
    assert_eq!(v["reversible"], true);

    // Trace below 3 is rejected at the flow level.
    let bad = run(&["reversible", "--matrix", "-2,-1;-1,-1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn surgery_examples() {
    let trivial = run(&["surgery", "--matrix", "2,1;1,1", "--move", "p1-i0,0"]);
    assert_eq!(trivial.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&trivial)).unwrap();
    assert_eq!(v["surgered_h1"], "Z");
    assert_eq!(v["fingerprint_match"], true);

    let m3 = run(&["surgery", "--matrix", "2,1;1,1", "--move", "p1-i0,3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&m3)).unwrap();
    assert_eq!(v["surgered_h1"], "Z/3");
    assert_eq!(v["fingerprint_match"], false);
    assert!(v["fingerprint_caveat"].as_str().unwrap().contains("necessary"));

    // Theorem A shape gets the Birkhoff validation block.
    let pair = run(&[
        "surgery", "--matrix", "2,1;1,1", "--move", "p2-i0,2", "--move", "p2-i1,-2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&pair)).unwrap();
    assert_eq!(v["surgered_h1"], "Z");
    assert_eq!(v["theorem_a_prime"]["validation"]["fiber_ok"], true);
    assert_eq!(v["theorem_a_prime"]["validation"]["passes"], true);

    // Unknown orbit id: exit 2.
    let unknown = run(&["surgery", "--matrix", "2,1;1,1", "--move", "p1-i7,1"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn loop_candidates_empty_when_slope_zero() {
    let out = run(&[
        "loop-candidates", "--matrix", "2,1;1,1", "--max-period", "2", "--max-slope", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["candidates"].as_array().unwrap().len(), 0);
}

#[test]
fn loop_candidates_deterministic_across_runs_and_threads() {
    let args = [
        "loop-candidates", "--matrix", "2,1;1,1", "--max-period", "3", "--max-slope", "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "two identical runs must agree byte-for-byte");
    let single = run_with_threads(&args, "1");
    let quad = run_with_threads(&args, "4");
    assert_eq!(a.stdout, single.stdout, "thread count must not change output");
    assert_eq!(a.stdout, quad.stdout);
}

#[test]
fn candidates_carry_labels() {
    let out = run(&[
        "loop-candidates", "--matrix", "2,1;1,1", "--max-period", "2", "--max-slope", "1",
        "--m0", "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let candidates = v["candidates"].as_array().unwrap();
    assert!(!candidates.is_empty());
    for c in candidates {
        let labels: Vec<&str> =
            c["labels"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
        assert!(labels.iter().any(|l| l.contains("necessary conditions only")));
        // |m| = 1 < m0 = 3: hypothetical.
        assert_eq!(c["certification"], "hypothetical");
    }
}

/// Minimal well-formedness check for the DOT grammar the tool emits:
/// a graph block, node statements `id [label="..."];`, edge statements
/// `id -- id [label="..."];`, balanced braces.
fn assert_dot_well_formed(text: &str) -> (usize, usize) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph surgeries {"));
    let mut nodes = 0;
    let mut edges = 0;
    let mut closed = false;
    for line in lines {
        if line == "}" {
            closed = true;
            break;
        }
        let line = line.trim();
        assert!(line.ends_with("];"), "statement must close: {line}");
        assert!(line.contains("[label=\""), "statement must carry a label: {line}");
        if line.contains(" -- ") {
            edges += 1;
        } else {
            nodes += 1;
        }
    }
    assert!(closed, "graph block must close");
    (nodes, edges)
}

#[test]
fn dot_output_well_formed_one_node_per_fingerprint() {
    let out = run(&[
        "loop-candidates", "--matrix", "2,1;1,1", "--max-period", "3", "--max-slope", "2",
        "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let (nodes, edges) = assert_dot_well_formed(&text);
    assert!(nodes >= 1 && edges >= 1);
    // One node per distinct fingerprint: labels are unique.
    let mut labels: Vec<&str> = text
        .lines()
        .filter(|l| !l.contains(" -- ") && l.contains("[label=\""))
        .map(|l| l.split("label=\"").nth(1).unwrap().trim_end_matches("\"];"))
        .collect();
    let total = labels.len();
    labels.sort();
    labels.dedup();
    assert_eq!(labels.len(), total, "duplicate fingerprint node");
}

#[test]
fn dot_rejected_for_non_graph_commands() {
    let out = run(&["orbits", "--matrix", "2,1;1,1", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn loop_candidates_warn_when_not_reversible() {
    let out = run(&[
        "loop-candidates", "--matrix", "43,10;30,7", "--max-period", "1", "--max-slope", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reversible"], false);
    assert!(v["warning"].as_str().unwrap().contains("A or A^-1"));
}

#[test]
fn propb_report_fields() {
    let out = run(&["propb", "--matrix", "2,1;1,1", "--max-period", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["note"].as_str().unwrap().contains("open question"));
    assert_eq!(v["density"].as_array().unwrap().len(), 5);
    assert_eq!(v["meta"]["bounds"]["c0"], "1");
    // Bad PropB parameters exit 2.
    let bad = run(&["propb", "--matrix", "2,1;1,1", "--max-period", "6", "--c0", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad2 = run(&["propb", "--matrix", "2,1;1,1", "--max-period", "6", "--kappa3", "x"]);
    assert_eq!(bad2.status.code(), Some(2));
}

#[test]
fn bad_thread_env_rejected() {
    let out = run_with_threads(
        &["loop-candidates", "--matrix", "2,1;1,1", "--max-period", "1", "--max-slope", "1"],
        "zero",
    );
    assert_eq!(out.status.code(), Some(2));
}
