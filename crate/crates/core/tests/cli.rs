//! The command-line binary: verbs and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sa-growth"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn calibrate_prints_and_writes_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let overlay = dir.path().join("cal.cfg");
    let out = bin().args(["calibrate", "--out"]).arg(&overlay).output().unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("(25.000)"));
    assert!(fs::read_to_string(&overlay).unwrap().contains("[initial]"));
}

#[test]
fn run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run"])
        .arg(config("baseline.cfg"))
        .arg("--out")
        .arg(dir.path())
        .arg("--charts")
        .output()
        .unwrap();
    // The published baseline table has cells the model does not reproduce.
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("criteria over T=1..100"));
    assert!(dir.path().join("trajectory.csv").exists());
    assert!(dir.path().join("labor.svg").exists());
}

#[test]
fn verify_tables_reports_mismatch() {
    let out = bin().args(["verify-tables", "--table", "T2"]).output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("T2: 27 cells checked, 6 mismatches"));
}

#[test]
fn sweep_writes_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = bin()
        .arg("sweep")
        .arg(config("table2.cfg"))
        .args(["--grid", "s=0.1,0.15,0.2", "--grid", "g_b=0.007:0.021:3", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 10);
}

#[test]
fn compare_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pair.csv");
    let ok = bin()
        .arg("compare")
        .arg(config("baseline.cfg"))
        .args(["--savings", "0.15,0.2", "--pin-output", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 102);

    let fails = bin()
        .arg("compare")
        .arg(config("baseline.cfg"))
        .args(["--productivity", "1,1.1"])
        .output()
        .unwrap();
    assert_eq!(code(&fails), 2);
    assert!(stdout(&fails).contains("G higher"));
}

#[test]
fn laffer_prints_csv() {
    let out = bin().arg("laffer").arg(config("table2.cfg")).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("T,L,G_cap,L_peak,G_peak,G_gap"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "[params]\ns = 2\n").unwrap();
    let out = bin().arg("run").arg(&bad).output().unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("params.s"));
    assert_eq!(
        code(&bin().arg("run").arg(dir.path().join("missing.cfg")).output().unwrap()),
        1
    );
    assert_eq!(code(&bin().arg("frobnicate").output().unwrap()), 1);
    assert_eq!(code(&bin().arg("--help").output().unwrap()), 0);
}

#[test]
fn infeasible_run_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(config("table2.cfg")).unwrap().replace(
        "closure = { kind = \"pinned_l\", constant = 75 }",
        "closure = { kind = \"pinned_g\", constant = 5 }",
    );
    let path = dir.path().join("infeasible.cfg");
    fs::write(&path, text.replace("[verify]\ntable = \"T2\"", "")).unwrap();
    let out = bin().arg("run").arg(&path).output().unwrap();
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}
