use std::path::PathBuf;
use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs")
}

fn temp_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("chowring-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn passing_suite_exits_zero() {
    let out = verify(&["verify", "so4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] so4.y2_sign"), "{text}");
}

#[test]
fn json_report_and_report_dir() {
    let dir = temp_dir("reports");
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["verify", "characters", "--format", "json"])
        .env("CHOW_VERIFY_REPORT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "characters");
    assert!(v["checks"][0]["anchor"].is_string());
    assert!(dir.join("characters.json").exists());
}

#[test]
fn broken_catalog_exits_one() {
    let dir = temp_dir("catalog");
    let path = dir.join("override.json");
    std::fs::write(
        &path,
        r#"{"maps": [{"name": "res_SO4_T", "source": "SO4", "target": "torus:so4",
            "images": {"y2": "2*t1*t2", "d2": "chern(W_so4, 2)", "d3": "chern(W_so4, 3)", "d4": "chern(W_so4, 4)"}}]}"#,
    )
    .unwrap();
    let out = verify(&["--catalog", path.to_str().unwrap(), "verify", "g2", "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("[FAIL]"));
}

#[test]
fn unknown_suite_exits_two() {
    assert_eq!(verify(&["verify", "e8"]).status.code(), Some(2));
}

#[test]
fn normal_form_subcommand() {
    let out = verify(&["normal-form", "G2", "c2^2 + c2*c7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "4*c4");
}
