//! End-to-end checks of the binary: exit-code contract and report
//! determinism.

use std::process::Command;

fn gmnl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gmnl"))
}

#[test]
fn exit_zero_when_expectations_met() {
    let out = gmnl().args(["verify", "c4"]).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("four_cluster_gmnl"));
    assert!(text.contains("8.82842712"));
}

#[test]
fn exit_one_when_an_expected_equivalence_fails() {
    let dir = tempdir();
    let script = dir.join("corrupted.json");
    std::fs::write(
        &script,
        r#"[{"name":"broken","netA":{"family":"fig2_I0"},"subsetA":["A","C"],
            "netB":{"family":"fig2_I1"},"subsetB":["A","C"],"expect":"equivalent"}]"#,
    )
    .unwrap();
    let out = gmnl()
        .args(["inflation", "check", "--suite", "file"])
        .arg(&script)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
}

#[test]
fn exit_two_on_invalid_input() {
    let out = gmnl()
        .args(["verify", "qudit-cluster", "--n", "3", "--d", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not prime"), "{err}");

    let out = gmnl().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    let run = || {
        let out = gmnl()
            .args(["--format", "json", "verify", "ghz-line", "--n", "4"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn csv_and_output_file() {
    let dir = tempdir();
    let path = dir.join("report.csv");
    let out = gmnl()
        .args(["--format", "csv", "--output"])
        .arg(&path)
        .args(["noise-threshold", "--spine", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("check,passed"));
    assert!(text.contains("0.906163679"));
}

#[test]
fn tolerance_env_override() {
    // An absurdly large tolerance makes the violation check fail: exit 1.
    let out = gmnl()
        .env("GMNL_TOL", "10")
        .args(["verify", "c4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gmnl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
