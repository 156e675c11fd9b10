use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn group_profiles() {
    let l2 = json_ok(&["group", "--family", "L2", "--k", "2"]);
    assert_eq!(l2["order"], 60);
    assert_eq!(l2["class_count"], 5);
    let q8 = json_ok(&["group", "--family", "quaternion", "--k", "2"]);
    assert_eq!(q8["order"], 8);
    assert_eq!(q8["center_size"], 2);
}

#[test]
fn group_from_spec_files() {
    let f = spec_file(r#"{"generators": ["(0 1 2)", "(0 1)"], "points": 3}"#);
    let v = json_ok(&["group", f.path().to_str().unwrap()]);
    assert_eq!(v["order"], 6);
    let f =
        spec_file(r#"{"generators": [[[1,1],[0,1]], [[0,1],[1,0]]], "field": {"p": 3, "n": 1}}"#);
    assert_eq!(json_ok(&["group", f.path().to_str().unwrap()])["order"], 48);
}

#[test]
fn bad_generator_names_its_index() {
    let f = spec_file(r#"{"generators": ["(0 1)", "(0 1 2)", "(0 7)"], "points": 4}"#);
    let out = run(&["group", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator 2"));
}

#[test]
fn parse_errors_exit_2() {
    let f = spec_file("{\"family\": \"dihedral\",\n \"params\": {\"k\": }}");
    let out = run(&["group", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["group", "--family", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["group"]).status.code(), Some(2));
    assert_eq!(
        run(&["kappa", "--family", "dihedral", "--k", "5", "--method", "magic"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn construction_errors_exit_3() {
    let out = run(&[
        "group",
        "--family",
        "metacyclic",
        "--a",
        "7",
        "--b",
        "3",
        "--u",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn kappa_examples() {
    let d10 = json_ok(&["kappa", "--family", "dihedral", "--k", "5"]);
    assert_eq!(d10["value"], "125");
    let s3 = json_ok(&[
        "kappa",
        "--family",
        "symmetric",
        "--d",
        "3",
        "--cross-check",
    ]);
    assert_eq!(s3["value"], "3");
    assert_eq!(s3["engines_agreed"], true);
    assert!(s3["engines"].as_array().unwrap().len() >= 3);
}

#[test]
fn kappa_l2_8_modular() {
    let v = json_ok(&["kappa", "--family", "L2", "--k", "3", "--method", "modular"]);
    let expected = num_pow(&[(2, 162), (3, 392), (7, 180)]);
    assert_eq!(v["value"].as_str().unwrap(), expected);
    assert_eq!(v["method"], "modular_crt");
}

/// Decimal string of a product of prime powers, by schoolbook arithmetic on
/// base-10^9 limbs.
fn num_pow(factors: &[(u64, u32)]) -> String {
    let mut limbs: Vec<u64> = vec![1];
    for &(p, e) in factors {
        for _ in 0..e {
            let mut carry = 0u64;
            for l in limbs.iter_mut() {
                let x = *l * p + carry;
                *l = x % 1_000_000_000;
                carry = x / 1_000_000_000;
            }
            while carry > 0 {
                limbs.push(carry % 1_000_000_000);
                carry /= 1_000_000_000;
            }
        }
    }
    let mut s = limbs.last().unwrap().to_string();
    for l in limbs.iter().rev().skip(1) {
        s.push_str(&format!("{l:09}"));
    }
    s
}

#[test]
fn inapplicable_engine_exits_4() {
    let out = run(&[
        "kappa",
        "--family",
        "symmetric",
        "--d",
        "4",
        "--method",
        "ac",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "partition",
        "--family",
        "symmetric",
        "--d",
        "5",
        "--find",
        "exact",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn partition_examples() {
    let q8 = json_ok(&[
        "partition",
        "--family",
        "quaternion",
        "--k",
        "2",
        "--find",
        "exact",
    ]);
    assert_eq!(q8["n"], 2);
    assert_eq!(q8["verified"], true);
    let s3 = json_ok(&[
        "partition",
        "--family",
        "symmetric",
        "--d",
        "3",
        "--find",
        "exact",
    ]);
    assert_eq!(s3, serde_json::json!({"result": "not_found"}));
    let bound = json_ok(&[
        "partition",
        "--family",
        "alternating",
        "--d",
        "5",
        "--bound",
    ]);
    assert_eq!(bound, 11);
}

#[test]
fn partition_verify_round_trip() {
    let q8 = json_ok(&[
        "partition",
        "--family",
        "quaternion",
        "--k",
        "2",
        "--find",
        "exact",
    ]);
    let f = spec_file(&q8.to_string());
    let v = json_ok(&[
        "partition",
        "--family",
        "quaternion",
        "--k",
        "2",
        "--verify",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(v["verified"], true);

    let mut bad = q8.clone();
    bad["n"] = 5.into();
    let f = spec_file(&bad.to_string());
    let v = json_ok(&[
        "partition",
        "--family",
        "quaternion",
        "--k",
        "2",
        "--verify",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(v["verified"], false);
    assert_eq!(v["violation"], "count_mismatch");
}

#[test]
fn dump_graph_writes_edges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.edges");
    json_ok(&[
        "group",
        "--family",
        "symmetric",
        "--d",
        "3",
        "--dump-graph",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(path).unwrap();
    // identity to the other five, plus the three edges inside ⟨(0 1 2)⟩ minus identity
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn verify_default_scope() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert!(entries.len() >= 20);
    let expected: Vec<&Value> = entries
        .iter()
        .filter(|e| e["classification"] == "expected-mismatch")
        .collect();
    assert_eq!(expected.len(), 2);
    assert!(expected
        .iter()
        .any(|e| e["formula"] == "three_abelian_c" && e["params"]["m"] == 2));
    for e in expected {
        assert!(e["closed_form"]["value"].is_string());
        assert!(!e["oracles"].as_array().unwrap().is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "partition",
        "--family",
        "dihedral",
        "--k",
        "6",
        "--find",
        "exact",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    assert_eq!(run(&["verify"]).stdout, run(&["verify"]).stdout);
}
