//! Runs the built binary: exit codes, the help examples, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_compasskit"));
    cmd.env_remove("COMPASSKIT_TOLERANCE");
    cmd
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// A scratch directory holding a copy of the bundled scripts.
fn scratch() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts");
    let dst = dir.path().join("scripts");
    std::fs::create_dir(&dst).unwrap();
    for entry in std::fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dst.join(entry.file_name())).unwrap();
    }
    dir
}

fn help() -> String {
    stdout(&bin().arg("--help").output().unwrap())
}

fn help_examples() -> Vec<Vec<String>> {
    help()
        .lines()
        .map(str::trim)
        .filter_map(|l| l.strip_prefix("compasskit "))
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

#[test]
fn every_help_example_succeeds() {
    let examples = help_examples();
    assert!(examples.len() >= 8);
    let dir = scratch();
    for args in examples {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run_in(dir.path(), &args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{args:?} printed nothing");
    }
    assert!(dir.path().join("golden.svg").exists());
    assert!(dir.path().join("scripts/golden_section.svg").exists());
}

#[test]
fn every_subcommand_is_listed() {
    let h = help();
    for sub in ["construct", "verify", "macros", "pi-table", "cf", "solve-triangle", "mensurate", "lantern"] {
        assert!(h.contains(sub), "{sub} missing from --help");
        assert!(bin().args([sub, "--help"]).output().unwrap().status.success());
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = scratch();
    for args in help_examples() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run_in(dir.path(), &args);
        let b = run_in(dir.path(), &args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let svg = |d: &Path| std::fs::read(d.join("golden.svg")).unwrap();
    let first = svg(dir.path());
    run_in(dir.path(), &["construct", "scripts/golden_section.cks", "--svg", "golden.svg"]);
    assert_eq!(first, svg(dir.path()));
}

#[test]
fn exit_codes() {
    let dir = scratch();
    let code = |args: &[&str]| run_in(dir.path(), args).status.code().unwrap();
    assert_eq!(code(&["construct", "scripts/equilateral.cks"]), 0);
    assert_eq!(code(&["construct", "scripts/failing_assert.cks"]), 1);
    assert_eq!(code(&["construct", "scripts/infeasible.cks"]), 2);
    assert_eq!(code(&["construct", "scripts/missing.cks"]), 2);
    assert_eq!(code(&["solve-triangle", "1", "1", "3"]), 2);
    assert_eq!(code(&["verify", "no-such-suite"]), 2);
    assert_eq!(code(&["pi-table", "--bogus"]), 2);
    assert_eq!(code(&["mensurate", "solid", "cone", "R=5", "X=2"]), 2);
    assert_eq!(code(&["lantern", "--m", "n^9", "--n", "4"]), 2);
}

#[test]
fn failing_assertion_reports_both_values() {
    let dir = scratch();
    let o = run_in(dir.path(), &["construct", "scripts/failing_assert.cks"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("measured 59.99"), "{err}");
    assert!(err.contains("expected 90"), "{err}");
    assert!(err.contains("line 7"), "{err}");
}

#[test]
fn pi_table_last_row() {
    let o = bin().args(["pi-table", "--rounds", "4"]).output().unwrap();
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let cols: Vec<&str> = last.split(',').collect();
    assert_eq!(cols[0], "96");
    // Perimeter of the inscribed 96-gon of a unit-radius circle, 192 sin(pi/96).
    let oracle = 192.0 * (std::f64::consts::PI / 96.0).sin();
    assert!((cols[2].parse::<f64>().unwrap() - oracle).abs() < 1e-9);
}

#[test]
fn cf_convergents_of_sqrt2() {
    let o = bin().args(["cf", "--value", "sqrt2", "--steps", "4"]).output().unwrap();
    let pq: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            format!("{}/{}", c[2], c[3])
        })
        .collect();
    // Pell numbers: p_k = 2 p_{k-1} + p_{k-2}, same for q.
    let (mut p, mut q) = ([1u64, 1], [0u64, 1]);
    let mut expect = vec!["1/1".to_string()];
    for _ in 1..4 {
        let (np, nq) = (2 * p[1] + p[0], 2 * q[1] + q[0]);
        p = [p[1], np];
        q = [q[1], nq];
        expect.push(format!("{np}/{nq}"));
    }
    assert_eq!(pq, expect);
}

#[test]
fn mensurate_cone_from_slant() {
    let o = bin().args(["mensurate", "solid", "cone", "R=5", "L=13"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pi = std::f64::consts::PI;
    assert!((v["volume"].as_f64().unwrap() - pi * 25.0 * 12.0 / 3.0).abs() < 1e-9);
    assert!((v["lateral"].as_f64().unwrap() - pi * 5.0 * 13.0).abs() < 1e-9);
    assert!((v["total"].as_f64().unwrap() - pi * 5.0 * 18.0).abs() < 1e-9);
}

#[test]
fn tolerance_from_environment() {
    let dir = scratch();
    let o = bin()
        .current_dir(dir.path())
        .env("COMPASSKIT_TOLERANCE", "1e-9,0.5")
        .args(["construct", "scripts/failing_assert.cks"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bin().env("COMPASSKIT_TOLERANCE", "nonsense").arg("macros").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lantern_sweep_rows() {
    let o = bin().args(["lantern", "--m", "n^3", "--sweep", "8"]).output().unwrap();
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,m,S");
    assert_eq!(rows.len(), 1 + 6);
    assert!(rows[1].starts_with("3,27,"));
}
