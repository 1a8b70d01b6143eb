use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    root.to_str().unwrap().to_string()
}

fn bjlevel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjlevel"))
        .args(args)
        .env_remove("BJLEVEL_FLOAT_TOL")
        .output()
        .unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = bjlevel(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bj_report() {
    let r = report(&[
        "bj",
        "--space",
        &data("l1_3.json"),
        "--x",
        "1,0,0",
        "--y",
        "1/2,1/2,0",
    ]);
    assert_eq!(
        r["result"],
        json!({"orthogonal": true, "witness": ["1", "-1", "0"], "method": "dual"})
    );
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "command",
            "inputs",
            "result",
            "arithmetic_mode",
            "tool_version",
            "seed"
        ]
    );
    assert_eq!(r["arithmetic_mode"], "exact");
}

#[test]
fn level_test_report() {
    let r = report(&[
        "level",
        "test",
        "--space",
        &data("l1_3.json"),
        "--op",
        &data("diag211.json"),
        "--x",
        "1,0,0",
    ]);
    assert_eq!(r["result"]["level_vector"], true);
    assert_eq!(r["result"]["level_number"], "4");
    let r = report(&[
        "level",
        "test",
        "--space",
        &data("linf_3.json"),
        "--op",
        &data("shear.json"),
        "--x",
        "1,1/2,0",
    ]);
    assert_eq!(r["result"], json!({"level_vector": false}));
}

#[test]
fn faces_reports() {
    let r = report(&["faces", "census", "--space", &data("linf_3.json")]);
    assert_eq!(r["result"], json!({"counts": [8, 12, 6], "total": 26}));
    let r = report(&[
        "faces",
        "minimal",
        "--space",
        &data("linf_2.json"),
        "--x",
        "1,1",
    ]);
    assert_eq!(r["result"]["dim"], 0);
    assert_eq!(r["result"]["vertices"], json!([["1", "1"]]));
}

#[test]
fn isometry_and_identity_reports() {
    let r = report(&[
        "isometry",
        "certify",
        "--space",
        &data("l1_3.json"),
        "--op",
        &data("diag123.json"),
    ]);
    assert_eq!(r["result"]["verdict"], "refuted");
    let r = report(&[
        "identity",
        "test",
        "--space",
        &data("linf_3.json"),
        "--op",
        &data("shear.json"),
        "--candidates",
        &data("shear_candidates.json"),
    ]);
    assert_eq!(r["result"]["failed"], json!(["iii"]));
    let r = report(&[
        "adjoint",
        "transfer",
        "--space",
        &data("linf_3.json"),
        "--op",
        &data("diag123.json"),
        "--x",
        "1,0,0",
    ]);
    assert_eq!(r["result"]["psi"], json!(["1", "0", "0"]));
    assert_eq!(r["result"]["adjoint_level_number"], "1");
}

#[test]
fn seeded_reports_are_reproducible() {
    let args = [
        "level",
        "enumerate",
        "--space",
        &data("linf_2.json"),
        "--op",
        &data("diag21.json"),
        "--samples",
        "5",
        "--seed",
        "42",
    ];
    let a = bjlevel(&args);
    let b = bjlevel(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"\n"));
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["result"]["values"], json!(["1", "4"]));
    assert_eq!(r["result"]["under_approximation"], true);
    assert_eq!(r["seed"], 42);

    let args = [
        "oracle",
        "preserve",
        "--space",
        &data("l1_3.json"),
        "--op",
        &data("diag211.json"),
        "--x",
        "1,0,0",
        "--samples",
        "100",
        "--seed",
        "1",
    ];
    let a = bjlevel(&args);
    assert_eq!(a.stdout, bjlevel(&args).stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(r["result"]["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn inputs_round_trip() {
    let r = report(&[
        "preserve",
        "check",
        "--space",
        &data("hexagon.json"),
        "--op",
        &data("diag21.json"),
        "--x",
        "1,1",
    ]);
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("space.json");
    let op = dir.path().join("op.json");
    std::fs::write(&space, r["inputs"]["space"].to_string()).unwrap();
    std::fs::write(&op, r["inputs"]["operator"].to_string()).unwrap();
    let again = report(&[
        "preserve",
        "check",
        "--space",
        space.to_str().unwrap(),
        "--op",
        op.to_str().unwrap(),
        "--x",
        "1,1",
    ]);
    assert_eq!(again["inputs"], r["inputs"]);
    assert_eq!(again["result"], r["result"]);
}

#[test]
fn files_win_over_flags() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.json");
    std::fs::write(&x, r#"["2","0","0"]"#).unwrap();
    let out = bjlevel(&[
        "bj",
        "--space",
        &data("l1_3.json"),
        "--x",
        "1,0,0",
        "--x-file",
        x.to_str().unwrap(),
        "--y",
        "1,1/2,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["inputs"]["x"], json!(["2", "0", "0"]));
    assert_eq!(r["result"]["orthogonal"], false);
}

#[test]
fn float_reports_carry_tolerance() {
    let r = report(&[
        "bj",
        "--space",
        &data("l2_3.json"),
        "--x",
        "1,2,3",
        "--y",
        "3,0,-1",
    ]);
    assert_eq!(r["arithmetic_mode"], "float");
    assert_eq!(r["tolerance"], 1e-9);
    assert_eq!(r["result"]["orthogonal"], true);
    let out = Command::new(env!("CARGO_BIN_EXE_bjlevel"))
        .args([
            "bj",
            "--space",
            &data("l2_3.json"),
            "--x",
            "1,0,0",
            "--y",
            "0,1,0",
        ])
        .env("BJLEVEL_FLOAT_TOL", "1e-6")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["tolerance"], 1e-6);
    let out = Command::new(env!("CARGO_BIN_EXE_bjlevel"))
        .args([
            "bj",
            "--space",
            &data("l2_3.json"),
            "--x",
            "1,0,0",
            "--y",
            "0,1,0",
        ])
        .env("BJLEVEL_FLOAT_TOL", "loose")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    for args in [
        vec![
            "bj",
            "--space",
            bad.to_str().unwrap(),
            "--x",
            "1",
            "--y",
            "1",
        ],
        vec![
            "bj",
            "--space",
            &data("l1_3.json"),
            "--x",
            "1,0",
            "--y",
            "1,0,0",
        ],
        vec![
            "bj",
            "--space",
            &data("l1_3.json"),
            "--x",
            "1,a,0",
            "--y",
            "1,0,0",
        ],
        vec!["faces", "census", "--space", &data("l2_3.json")],
        vec![
            "level",
            "test",
            "--space",
            &data("l1_3.json"),
            "--op",
            &data("diag211.json"),
            "--x",
            "0,0,0",
        ],
        vec!["frobnicate"],
    ] {
        let out = bjlevel(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = bjlevel(&["frobnicate"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["code"], "unknown_subcommand");
    let out = bjlevel(&["bj", "--space", &data("l1_3.json")]);
    assert_eq!(out.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["code"], "missing_argument");
    assert_eq!(bjlevel(&["--help"]).status.code(), Some(0));
    let out = bjlevel(&["faces", "census", "--space", &data("l2_3.json")]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["code"], "not_polyhedral");
}

#[test]
fn text_format() {
    let out = bjlevel(&[
        "faces",
        "census",
        "--space",
        &data("l1_3.json"),
        "--format",
        "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result.counts: (6, 12, 8)"));
    assert!(text.contains("result.total: 26"));
}

#[test]
fn selftest_passes() {
    let r = report(&["selftest"]);
    assert_eq!(r["result"]["failed"], 0);
    assert!(r["result"]["passed"].as_u64().unwrap() >= 20);
}
