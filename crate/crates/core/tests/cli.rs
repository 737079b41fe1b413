use std::process::{Command, Output};

use serde_json::Value;
use shapdet::check::Check;

fn shapdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shapdet"))
        .args(args)
        .env_remove("SHAPDET_MAX_DEGREE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = shapdet(&full);
    (
        o.status.code().unwrap(),
        serde_json::from_slice(&o.stdout).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn info_examples() {
    let o = shapdet(&["info", "A2^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ℓ=1 k=1 α=1 β=3 r=2"), "{}", stdout(&o));

    let (code, v) = json(&["info", "E6^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["k"], 2);
    assert_eq!(v["result"]["periods"], serde_json::json!([1, 1, 2, 2]));
    assert_eq!(v["type"], "E6^2");

    for bad in ["A3^2", "Q2^1", "A2", "D3^1"] {
        assert_eq!(shapdet(&["info", bad]).status.code(), Some(2), "{bad}");
    }
}

#[test]
fn gram_check_json() {
    let (code, v) = json(&["gram", "A1^1", "-d", "2", "--check"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["det_m"], "8");
    assert_eq!(r["predicted_det"], "8");
    assert_eq!(r["identity_ok"], true);
    assert_eq!(r["m"], serde_json::json!([["3", "4"], ["4", "8"]]));
    assert_eq!(v["pass"], true);
}

#[test]
fn json_checks_round_trip() {
    let cases: [&[&str]; 5] = [
        &["gram", "E6^2", "-d", "3", "--check"],
        &[
            "gram",
            "D4^3",
            "-d",
            "2",
            "--check",
            "--root-data",
            &fixture("d4_3_perturbed.json"),
        ],
        &["detA", "--roster"],
        &["series", "-p", "5", "--max-degree", "8"],
        &["blocks", "--n", "7", "--p", "3"],
    ];
    for args in cases {
        let (code, v) = json(args);
        let checks: Vec<Check> = serde_json::from_value(v["checks"].clone()).unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert_eq!(c.pass, c.expected == c.computed, "{args:?} {}", c.name);
        }
        let pass = checks.iter().all(|c| c.pass);
        assert_eq!(v["pass"], pass, "{args:?}");
        assert_eq!(code, if pass { 0 } else { 1 }, "{args:?}");
    }
}

#[test]
fn perturbed_fixture_fails_check() {
    let path = fixture("d4_3_perturbed.json");
    let o = shapdet(&["gram", "D4^3", "-d", "1", "--check", "--root-data", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
    // without --check the mismatch is reported but not enforced
    let o = shapdet(&["gram", "D4^3", "-d", "1", "--root-data", &path]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn blocks_and_series_examples() {
    let (code, v) = json(&["blocks", "--n", "4", "--p", "2"]);
    assert_eq!(code, 0);
    let blocks = v["result"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0]["cartan_det"], "8");
    assert_eq!(blocks[0]["core"], "()");

    let o = shapdet(&["series", "-p", "3", "--spin", "--max-degree", "4"]);
    assert_eq!(stdout(&o).trim(), "0,1,2,5,8");

    let o = shapdet(&["series", "A2^2", "--max-degree", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "d,a,b\n0,0,0\n1,0,1\n2,1,2\n3,1,5\n4,4,8\n");
}

#[test]
fn max_degree_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_shapdet"))
        .args(["series", "A1^1"])
        .env("SHAPDET_MAX_DEGREE", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "a(q): 0,1,3,6,12,20\nb(q): 0,0,0,0,0,0\n");
    let o = shapdet(&["series", "-p", "2"]);
    assert_eq!(stdout(&o).trim().split(',').count(), 21);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["series", "A1^1", "-p", "3"][..],
        &["series", "-p", "4", "--spin"],
        &["gram", "A1^1"],
        &["gram", "A1^1", "-d", "1", "--roster"],
        &["detA"],
        &["blocks", "--n", "4", "--p", "1"],
        &["info", "A1^1", "--format", "csv"],
        &["frobnicate"],
        &[
            "gram",
            "A1^1",
            "-d",
            "1",
            "--root-data",
            "/nonexistent/rd.json",
        ],
    ] {
        assert_eq!(shapdet(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.csv");
    let o = shapdet(&[
        "exponents",
        "A2^2",
        "-d",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "lambda,a,b\n\"(2)\",1,0\n\"(1,1)\",0,2\n"
    );
}

#[test]
fn roster_commands_pass() {
    let (code, v) = json(&["gram", "--roster", "--check", "-d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"].as_array().unwrap().len(), 12);
    assert_eq!(
        shapdet(&["detA", "--roster", "--max-n", "6"]).status.code(),
        Some(0)
    );
}
