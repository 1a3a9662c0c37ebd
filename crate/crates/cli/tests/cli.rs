//! End-to-end tests against the built binary: output values, formats,
//! determinism, and exit codes.

use std::process::{Command, Output};

fn trinc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn compute_jmobius_of_u23_expands_the_closed_form() {
    let out = trinc(&["compute", "--object", "U2,3", "--invariant", "jmobius"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "t^6 - 3t^5 - t^4 + 6t^3 - t^2 - 3t + 1"
    );
}

#[test]
fn compute_json_is_byte_deterministic() {
    let args = [
        "compute",
        "--object",
        "U2,4",
        "--invariant",
        "jchar",
        "--format",
        "json",
    ];
    let a = trinc(&args);
    let b = trinc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["invariant"], "jchar");
    assert_eq!(doc["poly"]["coeffs"], serde_json::json!([3, 4, 3]));
    assert_eq!(doc["poly"]["min_exp"], 0);
}

#[test]
fn compute_mu_and_j_tables() {
    let out = trinc(&["compute", "--object", "B1", "--invariant", "mu"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu({0}, {0}) = 1"));
    assert!(text.contains("mu({}, {0}) = -1"));

    let out = trinc(&[
        "compute",
        "--object",
        "C3",
        "--invariant",
        "j",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let values = doc["values"].as_array().unwrap();
    // C3 has 10 weakly increasing triples
    assert_eq!(values.len(), 10);
    let val_of_012 = values
        .iter()
        .find(|v| v["flag"] == serde_json::json!([0, 1, 2]))
        .unwrap();
    assert_eq!(val_of_012["value"], serde_json::json!(1));
}

#[test]
fn compute_chi_of_subspace_lattice_by_flags() {
    let out = trinc(&[
        "compute",
        "--object",
        "L",
        "--q",
        "2",
        "--n",
        "3",
        "--invariant",
        "chi",
    ]);
    assert!(out.status.success());
    // (t-1)(t-2)(t-4) expanded
    assert_eq!(stdout(&out).trim(), "t^3 - 7t^2 + 14t - 8");
}

#[test]
fn compute_accepts_poset_json() {
    let out = trinc(&[
        "compute",
        "--object",
        r#"{"size": 3, "covers": [[0,1],[1,2]]}"#,
        "--invariant",
        "jmobius",
    ]);
    assert!(out.status.success());
    // 3-chain: the nonzero flag values are the six mu-product flags plus
    // the diagonal, giving t^6 - t^5 - t^4 + 2t^3 - t^2 - t + 1.
    assert_eq!(stdout(&out).trim(), "t^6 - t^5 - t^4 + 2t^3 - t^2 - t + 1");
}

#[test]
fn compute_accepts_matroid_json() {
    let out = trinc(&[
        "compute",
        "--object",
        r#"{"type": "dual", "of": {"type": "graphic", "edges": [[0,1],[1,2],[0,2]]}}"#,
        "--invariant",
        "jchar",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "t + 1");

    let out = trinc(&[
        "compute",
        "--object",
        r#"{"type":"uniform","r":2,"n":3}"#,
        "--invariant",
        "jmobius",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "t^6 - 3t^5 - t^4 + 6t^3 - t^2 - 3t + 1"
    );
}

#[test]
fn verify_suites_pass_on_small_objects() {
    for (suite, object) in [
        ("j-axioms", "B3"),
        ("classical", "U2,3"),
        ("generalized", "B2"),
        ("polynomial", "L2^2"),
        ("structure", "C3"),
    ] {
        let out = trinc(&["verify", "--suite", suite, "--object", object]);
        assert!(
            out.status.success(),
            "suite {suite} on {object}: {}",
            stdout(&out)
        );
        assert!(stdout(&out).contains("checks passed"));
    }
}

#[test]
fn verify_all_on_boolean_square() {
    let out = trinc(&["verify", "--suite", "all", "--object", "B2", "--n", "4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("zeta3 |> J = delta3"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_qseries_needs_no_object() {
    let out = trinc(&["verify", "--suite", "qseries", "--n", "4"]);
    assert!(out.status.success());
}

#[test]
fn verify_json_format() {
    let out = trinc(&[
        "verify", "--suite", "j-axioms", "--object", "B2", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["failures"], serde_json::json!(0));
    assert_eq!(doc["checks"].as_array().unwrap().len(), 3);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"] == serde_json::json!(true)));
}

#[test]
fn subdivision_fixture_residuals() {
    let out = trinc(&[
        "subdivision",
        "--fixture",
        "u24-split",
        "--invariant",
        "jchar",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("residual:            0"));

    let out = trinc(&[
        "subdivision",
        "--fixture",
        "u24-split",
        "--invariant",
        "jmobius",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["residual"]["coeffs"], serde_json::json!([]));
}

#[test]
fn subdivision_accepts_fixture_json() {
    // trivial subdivision: the parent is its own single piece
    let fixture = r#"{
        "parent": {"type": "uniform", "r": 2, "n": 3},
        "pieces": [{"type": "uniform", "r": 2, "n": 3}],
        "intersections": []
    }"#;
    let out = trinc(&["subdivision", "--fixture", fixture, "--invariant", "jchar"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("residual:            0"));
}

#[test]
fn search_reports_catalog() {
    let out = trinc(&[
        "search",
        "--max-ground",
        "5",
        "--max-rank",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows.iter().any(|r| r["name"] == "dual(graphic(K33))"));
    for r in rows {
        if r["modular"] == serde_json::json!(true) {
            assert_eq!(r["vanishes"], serde_json::json!(true), "{r}");
        }
    }
}

#[test]
fn nonzero_additive_residual_exits_two() {
    // One piece missing a vertex: internally consistent data, but the
    // piece does not cover the parent polytope, so additivity fails and
    // the tool must flag the violation.
    let fixture = r#"{
        "parent": {"type": "uniform", "r": 2, "n": 4},
        "pieces": [{"type": "bases", "ground": 4,
                    "bases": [[0,2],[0,3],[1,2],[1,3],[2,3]]}],
        "intersections": []
    }"#;
    let out = trinc(&["subdivision", "--fixture", fixture, "--invariant", "jchar"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("residual:            t^2 + t + 1"));
}

#[test]
fn input_errors_exit_one() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["compute", "--object", "nonsense", "--invariant", "mu"],
        vec![
            "compute",
            "--object",
            r#"{"size":2,"covers":[[0,1],[1,0]]}"#,
            "--invariant",
            "mu",
        ],
        vec!["verify", "--suite", "classical"], // object missing
        vec!["compute", "--object", "B2"],      // invariant missing (usage error)
        vec![
            "subdivision",
            "--fixture",
            "no-such-fixture",
            "--invariant",
            "jchar",
        ],
        vec!["search", "--max-ground", "9"],
    ];
    for args in cases {
        let out = trinc(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
    }
}
