use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn hamfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamfix"))
        .args(args)
        .env_remove("HAMFIX_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Compares stdout with a golden file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(out: &Output, name: &str) {
    let path = golden(name);
    let got = stdout(out);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(got, want, "output differs from {}", path.display());
}

fn file(name: &str) -> String {
    golden(name).to_string_lossy().into_owned()
}

#[test]
fn model_documents_are_canonical() {
    let out = hamfix(&["model", "cpn", "--b", "2,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_golden(&out, "cp2.json");
    let out = hamfix(&["model", "quadric", "--n", "3", "--b", "2,1"]);
    assert_golden(&out, "q3.json");
}

#[test]
fn model_parameter_errors_exit_2() {
    for args in [
        &["model", "quadric", "--n", "4", "--b", "2,1"][..],
        &["model", "cpn", "--b", "0,1,1"],
        &["model", "quadric", "--n", "3", "--b", "0,1"],
        &["model", "quadric", "--n", "3", "--b", "2,-2"],
    ] {
        let out = hamfix(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stdout(&out).is_empty());
    }
}

#[test]
fn model_output_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q5.json");
    let path = path.to_str().unwrap();
    let out = hamfix(&["model", "quadric", "--n", "5", "--b", "3,-2,1", "--out", path]);
    assert_eq!(out.status.code(), Some(0));
    let out = hamfix(&["check", path]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("all checks passed\n"));
}

#[test]
fn check_reports() {
    let out = hamfix(&["check", &file("cp2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "PASS validate: ok\nPASS c1: C = 3\nPASS condition-d: d = 3\nPASS battery: 3 pairs vanish, V = 1\nall checks passed\n"
    );
    let out = hamfix(&["--json", "check", &file("cp2.json")]);
    assert_golden(&out, "check_cp2.out.json");

    let out = hamfix(&["check", &file("zero_weight.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("zero weight at point 1"));
    let out = hamfix(&["--json", "check", &file("zero_weight.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_golden(&out, "check_zero.out.json");
}

#[test]
fn parse_errors_exit_2_and_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"n":1,"points":[{"phi":"0","weights":[1]},{"phi":"1/0","weights":[-1]}]}"#,
    )
    .unwrap();
    let out = hamfix(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("points[1].phi"), "{}", stderr(&out));

    std::fs::write(&path, r#"{"n":2,"points":[{"phi":"0","weights":[1,2]}]}"#).unwrap();
    let out = hamfix(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = hamfix(&["check", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_integral_moments_need_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("half.json");
    std::fs::write(
        &path,
        r#"{"n":1,"points":[{"phi":"0","weights":[2]},{"phi":"1/2","weights":[-2]}]}"#,
    )
    .unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(hamfix(&["check", path]).status.code(), Some(1));
    let out = hamfix(&["--no-integrality", "check", path]);
    assert!(stdout(&out).starts_with("PASS validate"), "{}", stdout(&out));
}

#[test]
fn ring_and_chern_lines() {
    let out = hamfix(&["ring", &file("q3.json")]);
    assert_eq!(stdout(&out), "1, 1, 1/2, 1/2 — Quadric\n");
    assert_golden(&hamfix(&["--json", "ring", &file("q3.json")]), "ring_q3.out.json");

    let out = hamfix(&["ring", &file("exotic1.json")]);
    assert_eq!(stdout(&out), "1, 1, 1/5, 1/5 — Other\n");

    let out = hamfix(&["chern", &file("cp2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("c = 1 + 3x + 3x^2\n"));
    assert_golden(&hamfix(&["--json", "chern", &file("cp2.json")]), "chern_cp2.out.json");

    let out = hamfix(&["chern", &file("q3.json")]);
    assert!(stdout(&out).starts_with("c = 1 + 3x + 4x^2 + 2x^3\n"));
}

#[test]
fn ring_failure_exits_1() {
    let out = hamfix(&["ring", &file("zero_weight.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normalize_translates_first() {
    let out = hamfix(&["--normalize", "check", &file("q3.json")]);
    assert!(stdout(&out).contains("d = 6"), "{}", stdout(&out));
    let out = hamfix(&["check", &file("q3.json")]);
    assert!(stdout(&out).contains("d = 0"));
    let out = hamfix(&["--normalize", "model", "cpn", "--b", "3,4,5"]);
    assert_eq!(stdout(&out), std::fs::read_to_string(golden("cp2.json")).unwrap());
}

#[test]
fn solve_counts() {
    let out = hamfix(&["solve", "--ring", "cpn", "--phi", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("1 system found\n"));
    let out = hamfix(&["solve", "--ring", "quadric", "--phi", "-2,-1,1,3"]);
    assert!(stdout(&out).ends_with("0 systems found\n"));
    assert_golden(&hamfix(&["--json", "solve", "--ring", "cpn", "--phi", "0,1,2"]), "solve_cp2.out.json");

    let out = hamfix(&["solve", "--ring", "other", "--r", "1,1,1/5,1/5", "--phi", "0,1,5,6"]);
    assert!(stdout(&out).contains("filter only"));
}

#[test]
fn solve_is_independent_of_jobs() {
    let base = stdout(&hamfix(&["--json", "--jobs", "1", "solve", "--ring", "quadric", "--phi", "-3,-2,-1,1,2,3"]));
    for jobs in ["2", "4", "0"] {
        let other = hamfix(&["--json", "--jobs", jobs, "solve", "--ring", "quadric", "--phi", "-3,-2,-1,1,2,3"]);
        assert_eq!(stdout(&other), base);
    }
}

#[test]
fn bad_ring_flags_exit_2() {
    for args in [
        &["solve", "--ring", "quadric", "--phi", "0,1,2"][..],
        &["solve", "--ring", "cpn", "--phi", "0,2,1"],
        &["solve", "--ring", "cpn", "--r", "1,1,1", "--phi", "0,1,2"],
        &["solve", "--ring", "other", "--r", "1,2,1", "--phi", "0,1,2"],
        &["verify", "--ring", "other", "--r", "1,1,1", "--phi", "0,1,2"],
        &["solve", "--ring", "cpn", "--phi", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(hamfix(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_lines_and_exit_codes() {
    let out = hamfix(&["verify", "--ring", "cpn", "--phi", "0,1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 4);
    assert_golden(&hamfix(&["--json", "verify", "--ring", "quadric", "--phi", "-2,-1,1,2"]), "verify_q3.out.json");

    let out = hamfix(&["verify", "--ring", "quadric", "--phi", "-2,-1,1,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL (2)=>(4)"));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = hamfix(&["--budget", "3", "verify", "--ring", "cpn", "--phi", "0,1,2,3,4"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_hamfix"))
        .args(["solve", "--ring", "cpn", "--phi", "0,1,2,3,4"])
        .env("HAMFIX_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn graph_and_infer() {
    assert_golden(&hamfix(&["--json", "graph", &file("exotic1.json")]), "graph_exotic1.out.json");
    let out = hamfix(&["graph", &file("exotic1.json")]);
    let text = stdout(&out);
    assert!(text.contains("no sphere between P_0 and P_2"));
    assert!(text.contains("2 spheres between P_0 and P_3"));

    let out = hamfix(&["infer", "--weights", "1,2,3;-1,1,5;-1,-5,1;-1,-2,-3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "phi = 0, 1, 11, 12\nC = 1\nr = 1, 1, 1/22, 1/22 — Other\n");
    let out = hamfix(&["infer", "--weights", "1,x;-1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = hamfix(&["check", &file("q3.json"), "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(path).unwrap();
    assert!(written.contains("\"volume\": \"2\""));
}
