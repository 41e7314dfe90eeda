use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use trilit_cli::workspace::WorkspaceFile;
use trilit_cli::{run, EXIT_FAILED, EXIT_INPUT};

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn trilit(args: &[&str]) -> (i32, String) {
    run(std::iter::once("trilit").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let (code, out) = trilit(&v);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("trilit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn phi_of_simple_over_a2() {
    let (code, out) = trilit(&["mod", "phi", &example("a2.json"), "--module", "S1"]);
    assert_eq!(code, 0);
    assert!(out.contains("rank sequence: [1, 0, 0]"), "{out}");
    assert!(out.contains("Phi = 1"), "{out}");
    let v = json(&["mod", "phi", &example("a2.json"), "--module", "S1"]);
    assert_eq!(v["value"], 1);
    assert_eq!(v["ranks"], serde_json::json!([1, 0, 0]));
}

#[test]
fn fixtures_are_canonical() {
    for name in ["dual-numbers.json", "a2.json", "radical-square-zero.json"] {
        let text = std::fs::read_to_string(example(name)).unwrap();
        assert_eq!(
            WorkspaceFile::parse(&text).unwrap().to_canonical(),
            text,
            "{name}"
        );
        let (code, out) = trilit(&["alg", "build", "--canonical", &example(name)]);
        assert_eq!(code, 0);
        assert_eq!(out, text);
    }
}

#[test]
fn reordered_input_canonicalises() {
    let text = r#"{"field":2,"algebras":{"K":{"vertices":1,"relations":[],"arrows":[]}}}"#;
    let canon = WorkspaceFile::parse(text).unwrap().to_canonical();
    assert!(canon.find("\"algebras\"").unwrap() < canon.find("\"field\"").unwrap());
    assert_eq!(WorkspaceFile::parse(&canon).unwrap().to_canonical(), canon);
}

#[test]
fn non_admissible_relation_is_named() {
    let (code, out) = trilit(&["alg", "build", &example("not-admissible.json")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("relation \"x\""), "{out}");
}

#[test]
fn violated_relation_is_named() {
    let bad = scratch(
        "jordan.json",
        r#"{"modules":{"J":{"algebra":"D","dimension":3,
            "matrices":{"e1":[[1,0,0],[0,1,0],[0,0,1]],"x":[[0,0,0],[1,0,0],[0,1,0]]}}}}"#,
    );
    let (code, out) = trilit(&[
        "mod",
        "phi",
        &example("dual-numbers.json"),
        &bad,
        "--module",
        "J",
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("x*x") && out.contains("violated"), "{out}");
}

#[test]
fn malformed_inputs_exit_2() {
    let dual = example("dual-numbers.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["mod", "phi", &dual, "--module", "nope"],
        vec!["mod", "phi", &dual, "--module", "S", "--field", "3"],
        vec!["mod", "phi", "/nonexistent.json", "--module", "S"],
        vec!["alg", "frobnicate"],
    ];
    for args in cases {
        assert_eq!(trilit(&args).0, EXIT_INPUT, "{args:?}");
    }
    let garbage = scratch("garbage.json", "{\"algebras\": [");
    assert_eq!(trilit(&["alg", "build", &garbage]).0, EXIT_INPUT);
    let unknown = scratch("unknown.json", r#"{"algebra": {}}"#);
    assert_eq!(trilit(&["alg", "build", &unknown]).0, EXIT_INPUT);
}

#[test]
fn mixed_characteristics_rejected() {
    let other = scratch("f3.json", r#"{"field":3}"#);
    let (code, out) = trilit(&["alg", "build", &example("dual-numbers.json"), &other]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("field mismatch"), "{out}");
}

#[test]
fn module_commands() {
    let a2 = example("a2.json");
    let v = json(&["mod", "syzygy", &a2, "--module", "S1"]);
    assert_eq!(v["dimension_vector"], serde_json::json!([0, 1]));
    let v = json(&["mod", "decompose", &a2, "--module", "A"]);
    assert_eq!(v["summands"], 2);
    let v = json(&["mod", "pd", &a2, "--module", "S1"]);
    assert_eq!(v["finite"], 1);
    let v = json(&[
        "mod",
        "pd",
        &example("dual-numbers.json"),
        "--module",
        "S",
        "--bound",
        "4",
    ]);
    assert_eq!(v["at_least"], 4);
}

#[test]
fn algebra_commands() {
    let a2 = example("a2.json");
    assert_eq!(json(&["alg", "build", &a2])["dimension"], 3);
    assert_eq!(json(&["alg", "opposite", &a2])["dimension"], 3);
    let v = json(&["alg", "triangular", &a2, "--bimodule", "M"]);
    assert_eq!(v["dimension"], 9);
    assert_eq!(v["dim_m"], 3);
    let v = json(&["alg", "tensor-an", "--n", "3", "--changes", "2"]);
    assert_eq!(v["dimension"], 10);
    assert_eq!(v["matches_tensor"], true);
}

#[test]
fn triple_syzygy_agrees_on_random_instances() {
    for seed in ["0", "1", "2"] {
        let v = json(&["tri", "syzygy", "--both", "--seed", seed]);
        assert_eq!(v["formula_matches_oracle"], true, "seed {seed}");
        assert_eq!(v["lifted_matches_oracle"], true, "seed {seed}");
    }
}

#[test]
fn triple_syzygy_reports_the_dropped_component() {
    // The identity S2 -> M (x) S2 is drawn at this seed.
    let ws = example("radical-square-zero.json");
    let args = [
        "tri",
        "syzygy",
        "--both",
        "--workspace",
        &ws,
        "--bimodule",
        "M",
        "--a",
        "S2",
        "--b",
        "S2",
    ];
    let (code, out) = trilit(&[&args[..], &["--seed", "0"]].concat());
    assert_eq!(code, EXIT_FAILED, "{out}");
    assert!(out.contains("formula ≅ oracle: false"), "{out}");
    assert!(out.contains("lifted ≅ oracle: true"), "{out}");
    let (code, out) = trilit(&[&args[..], &["--seed", "2"]].concat());
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("formula ≅ oracle: true"));
}

#[test]
fn certificates_verify() {
    let (code, out) = trilit(&[
        "lit",
        "verify",
        &example("dual-numbers.json"),
        "--certificate",
        "all",
    ]);
    assert_eq!(code, 0, "{out}");
    let v = json(&[
        "lit",
        "verify",
        &example("a2.json"),
        "--certificate",
        "hereditary",
        "--targets",
        "10",
    ]);
    assert_eq!(v["passed"], true);
    let v = json(&[
        "lit",
        "search-b",
        &example("a2.json"),
        "--certificate",
        "hereditary",
        "--module",
        "S1",
    ]);
    assert_eq!(v["verified"], true);
}

#[test]
fn broken_certificate_fails() {
    // Over the dual numbers S has infinite projective dimension, so no
    // sequence with both ends in add(P) can end in S.
    let cert = scratch(
        "bad-cert.json",
        r#"{"certificates":{"proj":{"algebra":"D","n":0,"D":["P"],"V":0}}}"#,
    );
    let (code, out) = trilit(&[
        "lit",
        "verify",
        &example("dual-numbers.json"),
        &cert,
        "--certificate",
        "proj",
    ]);
    assert_eq!(code, EXIT_FAILED, "{out}");
}

#[test]
fn construct_and_towers() {
    let v = json(&[
        "lit",
        "construct",
        &example("a2.json"),
        "--bimodule",
        "M",
        "--cert-t",
        "hereditary",
        "--cert-u",
        "hereditary",
        "--verify",
    ]);
    assert_eq!(v["certificate"]["level"], 2);
    assert_eq!(v["verification"]["condition_a"]["failure"], Value::Null);
    let v = json(&["tower", "bn", "--n", "3", "--verify"]);
    assert_eq!(v["certificate"]["level"], 2);
    assert_eq!(v["plan"]["steps"].as_array().unwrap().len(), 2);
    let v = json(&[
        "tower",
        "bnprime",
        "--n",
        "2",
        "--workspace",
        &example("a2.json"),
        "--certificate",
        "hereditary",
    ]);
    assert_eq!(v["certificate"]["algebra_dimension"], 9);
    let v = json(&["tower", "an", "--n", "4", "--changes", "2,3"]);
    let kinds: Vec<&str> = v["plan"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["lower", "case_i", "case_ii"]);
}

#[test]
fn selftest_single_criterion() {
    let (code, out) = trilit(&["selftest", "--criterion", "3,8"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains("PASS")));
    assert_eq!(trilit(&["selftest", "--criterion", "12"]).0, EXIT_INPUT);
}

#[test]
fn help_exits_zero() {
    let (code, out) = trilit(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_trilit");
    let ok = Command::new(bin)
        .args(["mod", "phi", &example("a2.json"), "--module", "S1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("Phi = 1"));
    let bad = Command::new(bin)
        .args(["alg", "build", &example("not-admissible.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("relation"));
}
