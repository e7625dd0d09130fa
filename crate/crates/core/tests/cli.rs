use std::process::Command;

fn discroot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_discroot")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn torsor_selftest_passes() {
    let (code, stdout, _) = discroot(&["torsor-selftest", "--n", "3", "--samples", "50"]);
    assert_eq!(code, 0);
    for line in stdout.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn verify_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let (code, stdout, _) = discroot(&[
        "verify", "--suite", "pairing", "--p", "13", "--sample", "2", "--seed", "9", "--timings", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.iter().all(|v| v["suite"] == "pairing" && v["seed"] == 9));
    assert!(lines.iter().any(|v| v["elapsed_ms"].is_number()));
}

#[test]
fn curve_files_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.json");
    std::fs::write(&path, r#"[{"p":13,"a":[0,0,0,1,2]},{"p":37,"a":[1,0,1,3,5]}]"#).unwrap();
    let (code, stdout, _) = discroot(&["verify", "--suite", "cube-roots", "--curves", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("F_13^1:[0,0,0,1,2]"));
    assert!(stdout.contains("F_37^1:[1,0,1,3,5]"));
}

#[test]
fn property_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.json");
    std::fs::write(&path, r#"[{"p":13,"a":[0,0,0,0,0]}]"#).unwrap();
    let (code, stdout, _) = discroot(&["verify", "--suite", "cube-roots", "--curves", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("\"passed\":false"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(discroot(&["verify", "--suite", "nonsense"]).0, 2);
    assert_eq!(discroot(&["tate", "--n", "5"]).0, 2);
    assert_eq!(discroot(&["verify", "--suite", "pairing", "--all-curves", "--sample", "3"]).0, 2);
    assert_eq!(discroot(&["verify", "--suite", "pairing", "--curves", "/nonexistent/curves.json"]).0, 2);
    assert_eq!(discroot(&["frobnicate"]).0, 2);
}
