use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_screen-bem"))
}

#[test]
fn table_list() {
    let out = bin().args(["table", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().any(|l| l == "laplace-dir"));
}

#[test]
fn converge_neumann() {
    let out = bin().args(["converge", "neu-u2", "--meshes", "32,64,128,256"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(String::from_utf8(out.stderr).unwrap().contains("PASS"));
}

#[test]
fn solve_writes_report() {
    let dir = std::env::temp_dir().join(format!("screen-bem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scenario = dir.join("s.json");
    std::fs::write(
        &scenario,
        r#"{"name": "flat", "geometry": {"kind": "flat-segment"}, "bc": "neumann",
            "wavenumber": {"kL_over_pi": 5}, "rhs": {"kind": "plane-wave", "angle": 0.7}}"#,
    )
    .unwrap();
    let out = bin().arg("solve").arg(&scenario).arg("--out-dir").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("flat.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["converged"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn errors_exit_with_three() {
    let out = bin().args(["converge", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().args(["table", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().args(["solve", "/nonexistent/scenario.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_checks_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("screen-bem-cli-capped-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scenario = dir.join("capped.json");
    std::fs::write(
        &scenario,
        r#"{"name": "capped", "geometry": {"kind": "flat-segment"}, "bc": "dirichlet",
            "wavenumber": {"kL_over_pi": 5}, "rhs": {"kind": "plane-wave", "angle": 0.7},
            "preconditioner": {"type": "none"}, "solver": {"max_iter": 2}}"#,
    )
    .unwrap();
    let out = bin().arg("solve").arg(&scenario).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("FAIL converged"));
    std::fs::remove_dir_all(dir).unwrap();
}
