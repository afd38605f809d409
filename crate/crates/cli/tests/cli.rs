use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn pasture(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pasture"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> Value {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn check_golden(args: &[&str], name: &str, code: i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (c, out, err) = pasture(&full);
    assert_eq!(c, code, "{args:?}: {err}");
    let got: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(got, golden(name), "{args:?}");
}

#[test]
fn golden_outputs() {
    check_golden(&["hexagons", "F7"], "hexagons_f7.json", 0);
    check_golden(&["lift", "F4", "--kind", "wlum"], "lift_wlum_f4.json", 0);
    check_golden(&["hom", "H", "F7", "--list"], "hom_h_f7.json", 0);
    check_golden(&["iso", "F4", "F5"], "iso_f4_f5.json", 1);
    check_golden(&["reps", "--matroid", "U2,4", "--pasture", "F5"], "reps_u24_f5.json", 0);
    check_golden(
        &["lift-check", "--matroid", "K4", "--pasture", "F2", "--kind", "binary"],
        "lift_check_k4_f2.json",
        0,
    );
    check_golden(&["verify", "lift-table"], "verify_lift_table.json", 0);
    check_golden(&["pasture", "D"], "pasture_d.json", 0);
}

#[test]
fn lift_reports_factors() {
    let (c, out, _) = pasture(&["lift", "F13", "--kind", "ternary"]);
    assert_eq!(c, 0);
    assert!(out.contains("factors: D ox H ox U"), "{out}");
}

#[test]
fn iso_of_grs_lift() {
    let (c, out, _) = pasture(&["iso", "Lg(F4 x F5)", "G"]);
    assert_eq!(c, 0);
    assert!(out.starts_with("isomorphic"));
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(pasture(&["bogus"]).0, 3);
    assert_eq!(pasture(&["lift", "F4", "--kind", "nope"]).0, 3);
    assert_eq!(pasture(&["verify", "nope"]).0, 3);
    // help is not an error
    assert_eq!(pasture(&["--help"]).0, 0);
    // bad input
    let (c, _, err) = pasture(&["pasture", "F4 x"]);
    assert_eq!(c, 3);
    assert!(err.contains("offset 4"), "{err}");
    assert_eq!(pasture(&["pasture", "F6"]).0, 3);
    // guard
    let (c, _, err) = pasture(&["--max-candidates", "10", "reps", "--matroid", "K4", "--pasture", "F5"]);
    assert_eq!(c, 2, "{err}");
    assert_eq!(pasture(&["reps", "--matroid", "U2,4", "--pasture", "U"]).0, 2);
}

#[test]
fn json_errors() {
    let (c, out, _) = pasture(&["--json", "pasture", "F4 F5"]);
    assert_eq!(c, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("offset 3"));
}

#[test]
fn verify_triples_reports_listed_typos() {
    let (c, out, _) = pasture(&["--json", "verify", "triples"]);
    assert_eq!(c, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&str> = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["pass"] == false)
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"(32,5,11)"));
    assert!(failed.contains(&"(51,5,19)"));
}

#[test]
fn threads_flag() {
    let (c, out, _) = pasture(&["--threads", "2", "hom", "U", "F7"]);
    assert_eq!(c, 0);
    assert_eq!(out.trim(), "5 morphisms");
}
