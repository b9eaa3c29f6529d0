use std::path::PathBuf;
use std::process::Command;

fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_specialherm")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_manifest(cmd: &str, name: &str) -> (i32, String) {
    run(&[cmd, manifest(name).to_str().unwrap()])
}

#[test]
fn kahler_manifest_holds() {
    let (code, out) = run_manifest("check", "kahler.json");
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAILS"));
}

#[test]
fn skt_manifest_reports_kahler_witness() {
    let (code, out) = run_manifest("check", "skt_not_kahler.json");
    assert_eq!(code, 1);
    assert!(out.contains("kahler                       FAILS"));
    assert!(out.contains("skt                          holds"));
}

#[test]
fn malformed_index_gives_field_path() {
    let out = Command::new(env!("CARGO_BIN_EXE_specialherm"))
        .args(["--quiet", "check", manifest("malformed_index.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("metric[1].holo[0]"));
}

#[test]
fn deform_examples() {
    assert_eq!(run_manifest("deform", "deform_constant.json").0, 0);
    let (code, out) = run_manifest("deform", "deform_holomorphy.json");
    assert_eq!(code, 0);
    assert!(out.contains("holomorphic[0]               holds"));
    let (code, out) = run_manifest("deform", "deform_metric_variation.json");
    assert_eq!(code, 1);
    assert!(out.contains("witness: (-1i) dz1^dz2^dzb1^dzb2"));
}

#[test]
fn deform_needs_its_section() {
    assert_eq!(run_manifest("deform", "kahler.json").0, 2);
}

#[test]
fn blowup_examples() {
    let (code, out) = run_manifest("blowup", "blowup_point.json");
    assert_eq!(code, 0);
    assert!(out.contains("N0 = 1"));
    let (code, out) = run_manifest("blowup", "blowup_nonclosed.json");
    assert_eq!(code, 2);
    assert!(out.contains("blowup.omega"));
}

#[test]
fn json_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, _) = run(&["--quiet", "--report", path.to_str().unwrap(), "check", manifest("kahler.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["entries"][0]["name"], "kahler");
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn identities_small_run_and_mutation() {
    let (code, out) = run(&["identities", "--seed", "3", "--n", "2", "--cases", "5"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(&["identities", "--n", "1", "--cases", "5"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(&["identities", "--cases", "20", "--mutation", "bracket-sign"]);
    assert_eq!(code, 1);
    assert!(out.contains("bracket_symmetry             FAILS  (seed 0 case"));
    assert_eq!(run(&["identities", "--mutation", "nonsense"]).0, 2);
}
