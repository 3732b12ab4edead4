//! End-to-end tests of the `ising-embed` binary: every subcommand, the
//! documented exit codes, and byte-for-byte deterministic output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

use ising_embed_cli::io::{self, ResultFile};

const TRIANGLE: &str = r#"{
    "vertices": ["u", "v", "w"],
    "edges": [
        {"u": "u", "v": "v", "strength": -1.0},
        {"u": "v", "v": "w", "strength": -1.0},
        {"u": "u", "v": "w", "strength": -1.0}
    ],
    "weights": {}
}"#;

const CYCLE: &str = r#"{
    "hardware": {
        "vertices": ["p1", "p2", "p3", "p4"],
        "edges": [
            {"u": "p1", "v": "p2"},
            {"u": "p2", "v": "p3"},
            {"u": "p3", "v": "p4"},
            {"u": "p1", "v": "p4"}
        ]
    },
    "map": {"u": ["p1"], "v": ["p2"], "w": ["p3", "p4"]}
}"#;

const STAR: &str = r#"{
    "vertices": ["c", "x1", "x2", "x3", "x4", "x5", "x6"],
    "edges": [
        {"u": "c", "v": "x1", "strength": 1.0},
        {"u": "c", "v": "x2", "strength": 1.0},
        {"u": "c", "v": "x3", "strength": 1.0},
        {"u": "c", "v": "x4", "strength": 1.0},
        {"u": "c", "v": "x5", "strength": 1.0},
        {"u": "c", "v": "x6", "strength": 1.0}
    ],
    "weights": {}
}"#;

const STAR_EMBEDDING: &str = r#"{
    "hardware": {
        "vertices": ["ca", "cb", "l1", "l2", "l3", "l4", "l5", "l6"],
        "edges": [
            {"u": "ca", "v": "cb"},
            {"u": "ca", "v": "l1"},
            {"u": "ca", "v": "l2"},
            {"u": "ca", "v": "l3"},
            {"u": "cb", "v": "l4"},
            {"u": "cb", "v": "l5"},
            {"u": "cb", "v": "l6"}
        ]
    },
    "map": {
        "c": ["ca", "cb"],
        "x1": ["l1"], "x2": ["l2"], "x3": ["l3"],
        "x4": ["l4"], "x5": ["l5"], "x6": ["l6"]
    }
}"#;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ising-embed"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

/// Triangle problem and cycle embedding written into a fresh directory.
fn worked_example() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "triangle.json", TRIANGLE);
    write(dir.path(), "cycle.json", CYCLE);
    dir
}

#[test]
fn validate_accepts_the_worked_embedding() {
    let dir = worked_example();
    let out = run_in(
        dir.path(),
        &["validate", "-p", "triangle.json", "-e", "cycle.json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "embedding valid: 3 vertices onto 4 qubits\n");
}

#[test]
fn validate_reports_failures_and_exits_one() {
    let dir = worked_example();
    write(
        dir.path(),
        "broken.json",
        r#"{
            "hardware": {"vertices": ["p1", "p2"], "edges": [{"u": "p1", "v": "p2"}]},
            "map": {"u": ["p1"], "v": ["p2"], "w": ["p1"]}
        }"#,
    );
    let out = run_in(
        dir.path(),
        &["validate", "-p", "triangle.json", "-e", "broken.json"],
    );
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("images of both"), "{text}");
    assert!(text.contains("no hardware edge"), "{text}");
}

#[test]
fn set_params_reproduces_the_worked_values() {
    let dir = worked_example();
    let out = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "-o",
            "result.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let result: ResultFile = io::load(&dir.path().join("result.json")).unwrap();
    let w = &result.per_vertex["w"];
    let theta = w.theta.unwrap();
    assert!((theta - 1.5).abs() < 1e-9, "theta {theta}");
    assert!(w.omega.values().all(|x| x.abs() < 1e-9));
    assert!((result.offset_c - 1.5).abs() < 1e-9);
    assert!((result.c_max - 1.5).abs() < 1e-9);
    assert!(result.per_vertex["u"].theta.is_none());

    // The embedded model carries the right coupler values: every triangle
    // edge keeps strength -1, the inner edge of `w` gets -theta.
    let embedded = result.to_embedded().unwrap();
    let model = &embedded.model;
    let inner = model.graph().edge_ids().zip(model.strengths());
    for ((u, v), &s) in inner {
        if (u, v) == ("p3", "p4") {
            assert!((s + theta).abs() < 1e-12);
        } else {
            assert_eq!(s, -1.0);
        }
    }
}

#[test]
fn verify_end_to_end_passes_on_a_computed_result() {
    let dir = worked_example();
    run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "-o",
            "result.json",
        ],
    );
    let out = run_in(dir.path(), &["verify", "-r", "result.json", "--end-to-end"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("w: PASS margin 1 >= 1"), "{text}");
    assert!(text.contains("minima agree: yes"), "{text}");
    assert!(text.ends_with("verification: PASS\n"), "{text}");
}

#[test]
fn verify_fails_when_the_recorded_gap_is_raised() {
    let dir = worked_example();
    run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "-o",
            "result.json",
        ],
    );
    let path = dir.path().join("result.json");
    let mut value: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    value["gamma"] = json!(5.0);
    value["per_vertex"]["w"]["gamma"] = json!(5.0);
    fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();

    let out = run_in(dir.path(), &["verify", "-r", "result.json"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("w: FAIL"), "{text}");
    assert!(text.contains("witness"), "{text}");
    assert!(text.ends_with("verification: FAIL\n"), "{text}");
}

#[test]
fn solve_reports_the_ferromagnet_ground_states() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "edge.json",
        r#"{
            "vertices": ["a", "b"],
            "edges": [{"u": "a", "v": "b", "strength": -1.0}],
            "weights": {}
        }"#,
    );
    let out = run_in(dir.path(), &["solve", "-p", "edge.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "minimum -1\nminimizers: 2\n  a=-1 b=-1\n  a=+1 b=+1\n"
    );
}

#[test]
fn deembed_maps_synchronized_samples_and_flags_broken_ones() {
    let dir = worked_example();
    run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "-o",
            "result.json",
        ],
    );
    write(
        dir.path(),
        "samples.json",
        r#"{
            "samples": [
                {"p1": 1, "p2": 1, "p3": 1, "p4": 1},
                {"p1": -1, "p2": -1, "p3": -1, "p4": -1},
                {"p1": 1, "p2": -1, "p3": 1, "p4": -1}
            ]
        }"#,
    );

    let strict = run_in(
        dir.path(),
        &["deembed", "-r", "result.json", "-s", "samples.json"],
    );
    assert_eq!(code(&strict), 1);
    let text = stdout(&strict);
    assert!(
        text.contains("sample 0: representative, value -3, u=+1 v=+1 w=+1"),
        "{text}"
    );
    assert!(text.contains("sample 2: not synchronized"), "{text}");

    let majority = run_in(
        dir.path(),
        &[
            "deembed",
            "-r",
            "result.json",
            "-s",
            "samples.json",
            "--majority",
        ],
    );
    assert_eq!(code(&majority), 0, "{}", stderr(&majority));
    let text = stdout(&majority);
    // Ties in the split image of w resolve toward +1.
    assert!(
        text.contains("sample 2: majority, value 1, u=+1 v=-1 w=+1"),
        "{text}"
    );
    assert!(text.contains("deembedded 3 of 3 samples"), "{text}");
}

#[test]
fn compare_separates_optimal_from_the_uniform_baseline() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "star.json", STAR);
    write(dir.path(), "staremb.json", STAR_EMBEDDING);
    let out = run_in(
        dir.path(),
        &[
            "compare",
            "-p",
            "star.json",
            "-e",
            "staremb.json",
            "--gamma",
            "0.5",
            "--factor",
            "2.0",
            "--json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();

    // The center image splits its six unit couplers three and three, so the
    // single inner edge must carry sigma(S) + gamma = 3.5, well above the
    // conventional 2 * C_max = 2, which fails the gap check.
    let center = report["per_vertex"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["vertex"] == "c")
        .unwrap();
    assert!((center["theta_optimal"].as_f64().unwrap() - 3.5).abs() < 1e-9);
    assert_eq!(center["theta_baseline"].as_f64().unwrap(), 2.0);
    assert_eq!(center["optimal_pass"], Value::Bool(true));
    assert_eq!(center["baseline_pass"], Value::Bool(false));
    assert_eq!(report["logical_c_max"].as_f64().unwrap(), 1.0);
}

#[test]
fn preprocess_reduces_a_dominated_chain_to_nothing() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "chain.json",
        r#"{
            "vertices": ["a", "b", "c"],
            "edges": [
                {"u": "a", "v": "b", "strength": -1.0},
                {"u": "b", "v": "c", "strength": 0.5}
            ],
            "weights": {"a": 2.0, "b": -0.25}
        }"#,
    );
    let out = run_in(
        dir.path(),
        &[
            "preprocess",
            "-p",
            "chain.json",
            "-o",
            "reduced.json",
            "--json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["fixed"], json!({"a": -1, "b": -1, "c": 1}));
    assert_eq!(report["offset"].as_f64().unwrap(), -3.25);
    assert_eq!(report["reduced"]["vertices"], json!([]));

    let reduced = fs::read_to_string(dir.path().join("reduced.json")).unwrap();
    let parsed: Value = serde_json::from_str(&reduced).unwrap();
    assert_eq!(parsed["vertices"], json!([]));
}

#[test]
fn set_params_refuses_preprocessable_input() {
    let dir = worked_example();
    write(
        dir.path(),
        "heavy.json",
        r#"{
            "vertices": ["u", "v", "w"],
            "edges": [
                {"u": "u", "v": "v", "strength": -1.0},
                {"u": "v", "v": "w", "strength": -1.0},
                {"u": "u", "v": "w", "strength": -1.0}
            ],
            "weights": {"w": 5.0}
        }"#,
    );
    let out = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "heavy.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
        ],
    );
    assert_eq!(code(&out), 1);
    let text = stderr(&out);
    assert!(text.contains("preprocessable"), "{text}");
    assert!(
        text.contains("run `ising-embed preprocess` first"),
        "{text}"
    );
}

#[test]
fn generated_instances_validate_and_solve() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run_in(
        dir.path(),
        &[
            "gen-instance",
            "--seed",
            "11",
            "-n",
            "4",
            "--extra",
            "1",
            "--max-chain",
            "3",
            "-p",
            "p.json",
            "-e",
            "e.json",
        ],
    );
    assert_eq!(code(&gen), 0, "{}", stderr(&gen));

    let valid = run_in(dir.path(), &["validate", "-p", "p.json", "-e", "e.json"]);
    assert_eq!(code(&valid), 0, "{}", stdout(&valid));

    let set = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "p.json",
            "-e",
            "e.json",
            "--gamma",
            "0.4",
            "-o",
            "r.json",
        ],
    );
    assert_eq!(code(&set), 0, "{}", stderr(&set));

    let verify = run_in(dir.path(), &["verify", "-r", "r.json", "--end-to-end"]);
    assert_eq!(code(&verify), 0, "{}\n{}", stdout(&verify), stderr(&verify));
}

#[test]
fn same_seed_means_same_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = run_in(
            dir.path(),
            &["gen-tree", "--seed", "42", "-n", "9", "-o", "tree.json"],
        );
        assert_eq!(code(&out), 0);
    }
    let left = fs::read(a.path().join("tree.json")).unwrap();
    let right = fs::read(b.path().join("tree.json")).unwrap();
    assert_eq!(left, right);
}

#[test]
fn identical_runs_emit_identical_report_bytes() {
    let dir = worked_example();
    let args = [
        "set-params",
        "-p",
        "triangle.json",
        "-e",
        "cycle.json",
        "--gamma",
        "0.5",
        "--json",
    ];
    let first = run_in(dir.path(), &args);
    let second = run_in(dir.path(), &args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn result_files_reload_bit_exactly() {
    let dir = worked_example();
    run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "-o",
            "result.json",
        ],
    );
    let path = dir.path().join("result.json");
    let bytes = fs::read_to_string(&path).unwrap();
    let loaded: ResultFile = io::load(&path).unwrap();
    let embedded = loaded.to_embedded().unwrap();
    let rewritten = io::to_pretty(&ResultFile::from_embedded(&embedded));
    assert_eq!(bytes, rewritten);
}

#[test]
fn numeric_ids_normalize_to_strings() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "numeric.json",
        r#"{
            "vertices": [2, 1],
            "edges": [{"u": 2, "v": 1, "strength": -1.0}],
            "weights": {"1": 0.5}
        }"#,
    );
    let out = run_in(dir.path(), &["solve", "-p", "numeric.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "minimum -1.5\nminimizers: 1\n  1=-1 2=-1\n");
}

#[test]
fn dump_lp_writes_one_program_per_vertex() {
    let dir = worked_example();
    let out = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "--dump-lp",
            "lps",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for vertex in ["u", "v", "w"] {
        let text = fs::read_to_string(dir.path().join("lps").join(format!("{vertex}.lp"))).unwrap();
        assert!(text.contains("Minimize"), "{vertex}: {text}");
        assert!(text.contains("obj: theta"), "{vertex}: {text}");
    }
    // The split vertex has one inner edge: both directed cuts plus the
    // weight-sum row and two box rows per qubit.
    let w = fs::read_to_string(dir.path().join("lps").join("w.lp")).unwrap();
    let rows = w.split_once("Subject To").unwrap().1;
    assert_eq!(rows.matches(">=").count(), 2 + 4);
    assert_eq!(rows.matches(" = ").count(), 1);
}

#[test]
fn gamma_override_raises_one_vertex_only() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "star.json", STAR);
    write(dir.path(), "staremb.json", STAR_EMBEDDING);
    let out = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "star.json",
            "-e",
            "staremb.json",
            "--gamma",
            "0.5",
            "--gamma-override",
            "c=1.0",
            "-o",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let result: ResultFile = io::load(&dir.path().join("r.json")).unwrap();
    let center = &result.per_vertex["c"];
    assert_eq!(center.gamma, 1.0);
    assert!((center.theta.unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(result.per_vertex["x1"].gamma, 0.5);
}

#[test]
fn usage_errors_exit_two() {
    let dir = worked_example();
    write(dir.path(), "bad.json", "{\"not json");

    let malformed = run_in(dir.path(), &["solve", "-p", "bad.json"]);
    assert_eq!(code(&malformed), 2);
    assert!(stderr(&malformed).contains("bad.json"));

    let missing = run_in(dir.path(), &["solve", "-p", "nowhere.json"]);
    assert_eq!(code(&missing), 2);
    assert!(stderr(&missing).contains("nowhere.json"));

    let unknown = run_in(dir.path(), &["frobnicate"]);
    assert_eq!(code(&unknown), 2);

    let bad_strategy = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "--strategy",
            "nonsense",
        ],
    );
    assert_eq!(code(&bad_strategy), 2);

    let bad_override = run_in(
        dir.path(),
        &[
            "set-params",
            "-p",
            "triangle.json",
            "-e",
            "cycle.json",
            "--gamma",
            "0.5",
            "--gamma-override",
            "w",
        ],
    );
    assert_eq!(code(&bad_override), 2);
    assert!(stderr(&bad_override).contains("VERTEX=GAMMA"));
}
