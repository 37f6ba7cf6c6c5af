use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn matdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matdiv"))
        .args(args)
        .env_remove("MATDIV_SEED")
        .output()
        .expect("binary runs")
}

fn scene_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn fixture_scene_passes_verify_all() {
    let scene = fixture("gl2-basic.json");
    let out = matdiv(&["verify-all", "--scene", scene.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("quotient excess:"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn reduce_fixtures() {
    let out = matdiv(&["reduce", "--germ", fixture("jordan.json").to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["d"], serde_json::json!([2, 0]));

    let out = matdiv(&["reduce", "--germ", fixture("diag-z-z3.json").to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d"], serde_json::json!([3, 1]));
    assert_eq!(v["residual_zero"], Value::Bool(true));

    let out = matdiv(&["reduce", "--germ", fixture("sp4-germ.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported family for reduction"));
}

#[test]
fn coincident_points_are_an_input_error() {
    let f = scene_file(
        r#"{
  "algebra": { "family": "A", "rank": 1, "module": "gl" },
  "gammas": [ { "point": 1, "h": [1] } ],
  "pis": [ { "point": 1, "mult": 1 } ]
}"#,
    );
    let out = matdiv(&["lax-dim", "--scene", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn missing_file_and_missing_flag_are_input_errors() {
    assert_eq!(matdiv(&["dims", "--scene", "/nonexistent/scene.json"]).status.code(), Some(2));
    assert_eq!(matdiv(&["dims"]).status.code(), Some(2));
}

#[test]
fn large_divisor_skips_injectivity() {
    let f = scene_file(
        r#"{"algebra": {"family": "A", "rank": 1, "module": "gl"},
            "gammas": [{"point": 1, "h": [1]}], "pis": [{"point": 4, "mult": 2}]}"#,
    );
    let out = matdiv(&["verify-all", "--scene", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SKIP localization-injectivity"));
    assert!(text.contains("PASS section-dimension"));
}

#[test]
fn json_is_stable_and_seeded() {
    let scene = fixture("gl2-basic.json");
    let path = scene.to_str().unwrap();
    let a = matdiv(&["verify-all", "--scene", path, "--seed", "3", "--json"]);
    let b = matdiv(&["verify-all", "--scene", path, "--seed", "3", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 3);

    let env = Command::new(env!("CARGO_BIN_EXE_matdiv"))
        .args(["verify-all", "--scene", path, "--seed", "3", "--json"])
        .env("MATDIV_SEED", "12")
        .output()
        .unwrap();
    assert_eq!(json(&env)["seed"], 12);

    let from_file = matdiv(&["verify-all", "--scene", path, "--json"]);
    assert_eq!(json(&from_file)["seed"], 7);
}

#[test]
fn dims_reports_formula_side_by_side() {
    let f = scene_file(
        r#"{"algebra": {"family": "A", "rank": 1, "module": "gl"},
            "gammas": [{"point": 1, "h": [1]}, {"point": 2, "h": [1]}, {"point": 3, "h": [1]}, {"point": 4, "h": [1]}],
            "genus_for_formulas": 2}"#,
    );
    let out = matdiv(&["dims", "--scene", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["moving_gamma_mod_adG"], 5);
    assert_eq!(v["formula"]["value"], 5);

    let empty = scene_file(r#"{"algebra": {"family": "C", "rank": 2, "module": "defining"}, "gammas": []}"#);
    let v = json(&matdiv(&["dims", "--scene", empty.path().to_str().unwrap(), "--json"]));
    assert_eq!(v["fixed_gamma"], 0);
}
