//! The command-line interface through the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revarrow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn without_timing(s: &str) -> String {
    s.lines()
        .filter(|l| !l.contains("time="))
        .collect::<Vec<_>>()
        .join("\n")
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.fix"))
}

#[test]
fn laws_exit_codes() {
    assert_eq!(run(&["laws", "identity"]).status.code(), Some(0));
    assert_eq!(run(&["laws", "--effect", "error"]).status.code(), Some(0));
    assert_eq!(run(&["laws", "mutant-noinv"]).status.code(), Some(1));
    assert_eq!(run(&["laws", "no-such-effect"]).status.code(), Some(2));
    assert_eq!(run(&["laws", "identity", "--fin", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn mutant_report_names_the_failing_law() {
    let out = stdout(&run(&["laws", "mutant-noinv", "--format", "machine"]));
    let line = out
        .lines()
        .find(|l| l.starts_with("law id=13 "))
        .expect("row for law 13");
    assert!(line.contains("verdict=fail"), "{line}");
    assert!(!line.contains("input=\"\""), "{line}");
}

#[test]
fn machine_output_is_deterministic() {
    let a = stdout(&run(&["laws", "--all", "--format", "machine"]));
    let b = stdout(&run(&["laws", "--all", "--format", "machine"]));
    assert_eq!(without_timing(&a), without_timing(&b));
    let p = stdout(&run(&["profcheck", "--all", "--format", "machine"]));
    let q = stdout(&run(&["profcheck", "--all", "--format", "machine"]));
    assert_eq!(without_timing(&p), without_timing(&q));
}

#[test]
fn profcheck_accepts_fixture_files() {
    let path = fixture_path("defect");
    let o = run(&["profcheck", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.lines().any(|l| l.starts_with("diagram5 ") && l.contains("fail")),
        "{text}"
    );
    assert_eq!(run(&["profcheck", "--bundled", "z2"]).status.code(), Some(0));
    assert_eq!(run(&["profcheck", "--all"]).status.code(), Some(0));
    assert_eq!(run(&["profcheck"]).status.code(), Some(2));
    assert_eq!(run(&["profcheck", "--bundled", "nope"]).status.code(), Some(2));
}

#[test]
fn truncated_fixture_reports_its_position() {
    let text = std::fs::read_to_string(fixture_path("defect")).unwrap();
    let cut = text.find("mul a a").unwrap() + "mul a a".len();
    let dir = std::env::temp_dir().join(format!("revarrow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("truncated.fix");
    std::fs::write(&path, &text[..cut]).unwrap();
    let o = run(&["profcheck", path.to_str().unwrap()]);
    let line = text[..cut].lines().count();
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert_eq!(o.status.code(), Some(2), "{err}");
    assert!(err.contains(&format!("line {line}, column ")), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn demos_and_doundo_succeed() {
    for d in ["serialize", "state", "rewriter", "info"] {
        let o = run(&["demo", d]);
        assert_eq!(o.status.code(), Some(0), "{d}: {}", stdout(&o));
    }
    let o = run(&["doundo", "rstate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pipelines=100 failures=0"));
    assert_eq!(run(&["doundo", "mutant-noinv"]).status.code(), Some(1));
}
