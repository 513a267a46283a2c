use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcp"))
        .args(args)
        .output()
        .expect("tcp runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn klein_json() {
    let o = tcp(&[
        "homology",
        "--builtin",
        "klein",
        "--max-dim",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["homology"]["0"], "Z");
    assert_eq!(v["homology"]["1"], "Z+Z/2");
    assert_eq!(v["homology"]["2"], "0");
    assert!(v["route"].is_string());
    assert!(v["diagnostics"].is_object());
}

#[test]
fn hopf_text() {
    let o = tcp(&["homology", "--builtin", "hopf", "--max-dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "H_0=Z H_1=0 H_2=0 H_3=Z");
}

#[test]
fn every_method_on_the_torus() {
    for m in ["auto", "thm41", "cor42", "cor44", "direct"] {
        let o = tcp(&[
            "homology",
            "--builtin",
            "torus",
            "--max-dim",
            "2",
            "--method",
            m,
        ]);
        assert_eq!(stdout(&o), "H_0=Z H_1=Z^2 H_2=Z", "{m}");
    }
}

#[test]
fn double_cover_and_its_precondition() {
    let o = tcp(&["homology", "--builtin", "double-cover", "--max-dim", "2"]);
    assert_eq!(stdout(&o), "H_0=Z H_1=Z H_2=0");
    let o = tcp(&[
        "homology",
        "--builtin",
        "double-cover",
        "--max-dim",
        "2",
        "--method",
        "cor42",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn klein_from_flags_and_a_twist_file() {
    let dir = TempDir::new().unwrap();
    let twist = write(&dir, "tw.json", r#"{"map": {"σ1": 1}}"#);
    let o = tcp(&[
        "homology",
        "--fiber",
        "circle2",
        "--base",
        "sphere(1)",
        "--group",
        "kzm0(2)",
        "--action",
        "flip",
        "--twist",
        &twist,
        "--max-dim",
        "2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), "H_0=Z H_1=Z+Z/2 H_2=0");
}

const Z2: &str = r#"{
  "name": "Z/2", "simplices": {"0": ["e", "x"]}, "faces": {},
  "unit": {"0": "e"},
  "mul": {"0": [["e","e","e"], ["e","x","x"], ["x","e","x"], ["x","x","e"]]},
  "inv": {"0": [["e","e"], ["x","x"]]}
}"#;

#[test]
fn twist_checks_with_a_group_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "z2.json", Z2);
    let t = write(&dir, "tw.json", r#"{"map": {"σ1": "x"}}"#);
    let o = tcp(&[
        "check-twist",
        "--base",
        "sphere(1)",
        "--group",
        &g,
        "--twist",
        &t,
        "--max-dim",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // an element of the wrong dimension
    let t = write(
        &dir,
        "bad.json",
        r#"{"map": {"σ1": {"deg": [0], "core": "x"}}}"#,
    );
    let o = tcp(&[
        "check-twist",
        "--base",
        "sphere(1)",
        "--group",
        &g,
        "--twist",
        &t,
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn twist_axioms_on_a_triangle() {
    let dir = TempDir::new().unwrap();
    let good = write(
        &dir,
        "good.json",
        r#"{"map": {"01": 1, "12": 1, "02": 2, "012": 1}}"#,
    );
    let bad = write(
        &dir,
        "bad.json",
        r#"{"map": {"01": 1, "12": 1, "02": 0, "012": 1}}"#,
    );
    let args = |t: &str| {
        tcp(&[
            "check-twist",
            "--base",
            "simplex(2)",
            "--group",
            "kzm0(3)",
            "--twist",
            t,
            "--max-dim",
            "3",
            "--format",
            "json",
        ])
    };
    let o = args(&good);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = args(&bad);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["reason"].as_str().unwrap().contains("τ"));
}

#[test]
fn star_condition_on_kz1_and_a_bad_field() {
    let o = tcp(&[
        "vf-check-star",
        "--base",
        "kz1",
        "--field",
        "eml",
        "--max-dim",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = tcp(&[
        "vf-check-star",
        "--builtin",
        "double-cover",
        "--max-dim",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "v.json", r#"{"pairs": [["12", "012"]]}"#);
    let o = tcp(&["vf-check-star", "--base", "simplex(2)", "--field", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("012"));
}

#[test]
fn cyclic_field_exceeds_the_guard() {
    let dir = TempDir::new().unwrap();
    let base = write(
        &dir,
        "tri.json",
        r#"{"name": "triangle", "simplices": {"0": ["a", "b", "c"], "1": ["ab", "bc", "ca"]},
            "faces": {"ab": ["b", "a"], "bc": ["c", "b"], "ca": ["a", "c"]}}"#,
    );
    let f = write(
        &dir,
        "cyc.json",
        r#"{"pairs": [["a", "ab"], ["b", "bc"], ["c", "ca"]]}"#,
    );
    let o = tcp(&[
        "homology",
        "--base",
        &base,
        "--group",
        "kzm0(1)",
        "--field",
        &f,
        "--max-dim",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = tcp(&[
        "homology",
        "--base",
        &base,
        "--group",
        "kzm0(1)",
        "--max-dim",
        "1",
    ]);
    assert_eq!(stdout(&o), "H_0=Z H_1=Z");
}

#[test]
fn reduction_report() {
    let o = tcp(&[
        "check-reduction",
        "--builtin",
        "klein",
        "--max-dim",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], true);
    assert!(v["reductions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["ok"] == true));
    let o = tcp(&["check-reduction", "--builtin", "hopf", "--max-dim", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn transport_gives_cycles() {
    let o = tcp(&[
        "transport",
        "--builtin",
        "klein",
        "--degree",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["homology"], "Z+Z/2");
    assert_eq!(v["cycles"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(
        tcp(&["homology", "--builtin", "moebius"]).status.code(),
        Some(1)
    );
    assert_eq!(
        tcp(&["homology", "--builtin", "klein", "--method", "fast"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tcp(&["homology", "--base", "sphere(1)"]).status.code(),
        Some(1)
    );
    assert_eq!(tcp(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tcp(&["--help"]).status.code(), Some(0));
    let o = tcp(&[
        "homology",
        "--base",
        "/nonexistent/space.json",
        "--group",
        "kzm0(2)",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{not json");
    assert_eq!(
        tcp(&["homology", "--base", &junk, "--group", "kzm0(2)"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn space_file_validation() {
    let dir = TempDir::new().unwrap();
    // faces listed in the wrong order break d0 d1 = d0 d0
    let s = write(
        &dir,
        "s.json",
        r#"{"name": "bad", "simplices": {"0": ["v", "w"], "1": ["e"], "2": ["t"]},
            "faces": {"e": ["w", "v"], "t": ["e", "e", "e"]}}"#,
    );
    assert_eq!(
        tcp(&["homology", "--base", &s, "--group", "kzm0(1)"])
            .status
            .code(),
        Some(1)
    );
    let s = write(
        &dir,
        "deg.json",
        r#"{"name": "bad", "simplices": {"0": ["v"], "1": ["e"]},
            "faces": {"e": [{"deg": [0, 1], "core": "v"}, "v"]}}"#,
    );
    assert_eq!(
        tcp(&["homology", "--base", &s, "--group", "kzm0(1)"])
            .status
            .code(),
        Some(1)
    );
}
