//! Byte-level regression of the trajectory file for a checked-in configuration.

use std::process::Command;

const GOLDEN_CFG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/golden.cfg");
const GOLDEN_CSV: &str = include_str!("data/golden.csv");

#[test]
fn golden_csv_is_reproduced_byte_for_byte() {
    let o = Command::new(env!("CARGO_BIN_EXE_mathisson-top"))
        .args(["simulate", GOLDEN_CFG])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let got = String::from_utf8(o.stdout).unwrap();
    assert!(got == GOLDEN_CSV, "trajectory differs from tests/data/golden.csv");
}

#[test]
fn golden_run_logs_the_projection() {
    let o = Command::new(env!("CARGO_BIN_EXE_mathisson-top"))
        .args(["simulate", GOLDEN_CFG, "--out", "/dev/null"])
        .output()
        .unwrap();
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("pirani_project: s ->"));
    assert!(err.contains("pirani_project: udot ->"));
}
