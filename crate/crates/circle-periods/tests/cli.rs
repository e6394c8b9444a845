//! The command-line front end: exit statuses and byte-stable output.

use std::process::Command;

use clap::Parser;

use circle_periods::cli::{run, Cli, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circper"))
}

fn outcome(args: &[&str]) -> anyhow::Result<circle_periods::cli::Outcome> {
    let cli = Cli::try_parse_from(std::iter::once("circper").chain(args.iter().copied()))?;
    run(&cli)
}

#[test]
fn periods_reports_m_set_and_tail() {
    let out = outcome(&["periods", "--c", "1/2", "--d", "7/10"]).unwrap();
    assert_eq!(out.status, Status::Green);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["finite"], serde_json::json!([3]));
    assert_eq!(v["tail_from"], serde_json::json!(5));
}

#[test]
fn green_family_exits_zero_and_red_family_exits_two() {
    let s = bin().args(["family", "dream", "--n", "3", "--verify"]).output().unwrap();
    assert_eq!(s.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert_eq!(v["per_ok"], serde_json::json!(true));
    // The claimed upper bound on bc fails for montevideo n = 3.
    let s = bin().args(["family", "montevideo", "--n", "3", "--verify"]).output().unwrap();
    assert_eq!(s.status.code(), Some(2));
}

#[test]
fn errors_exit_one() {
    let s = bin().args(["family", "dream", "--n", "2"]).output().unwrap();
    assert_eq!(s.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&s.stderr).contains("n >= 3"));
    let s = bin().args(["beta", "--c", "1/2", "--d", "1/2"]).output().unwrap();
    assert_eq!(s.status.code(), Some(1));
    let s = bin().args(["beta", "--c", "0", "--d", "1", "--tol", "0"]).output().unwrap();
    assert_ne!(s.status.code(), Some(0));
}

#[test]
fn scan_writes_one_row_per_parameter() {
    let dir = std::env::temp_dir().join(format!("circper-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("scan.csv");
    let svg = dir.join("scan.svg");
    let args = ["scan", "dream", "--from", "3", "--to", "12", "--out", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap()];
    let out = outcome(&args).unwrap();
    assert_eq!(out.status, Status::Green);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,rot_c,rot_d,len_rot,entropy_lo,entropy_hi,sbc,bc,flags"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    for (row, n) in rows.iter().zip(3u64..) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[0], n.to_string());
        assert_eq!(cols[3], format!("1/{}", 2 * n - 1));
    }
    let first = std::fs::read(&csv).unwrap();
    outcome(&args).unwrap();
    assert_eq!(first, std::fs::read(&csv).unwrap(), "scan output must be byte-stable");
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        vec!["family", "persistent", "--n", "7", "--verify"],
        vec!["beta", "--c", "1/3", "--d", "1/2", "--tol", "1e-9"],
        vec!["oracle", "dream", "--n", "5", "--max-period", "8"],
    ] {
        let a = outcome(&args).unwrap();
        let b = outcome(&args).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn extend_reads_graph_files() {
    let graph = concat!(env!("CARGO_MANIFEST_DIR"), "/data/star3.json");
    let out = outcome(&["extend", "dream", "--n", "5", "--graph", graph]).unwrap();
    assert_eq!(out.status, Status::Green);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["traversal"]["m"], serde_json::json!(7));
    let err = outcome(&["extend", "dream", "--n", "4", "--graph", graph]).unwrap_err();
    assert!(err.to_string().contains("no extension"));
}

#[test]
fn oracle_agrees_with_closed_form() {
    let out = outcome(&["oracle", "persistent", "--n", "5", "--max-period", "8"]).unwrap();
    assert_eq!(out.status, Status::Green);
}
