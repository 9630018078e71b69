use std::fs;
use std::process::Command as Proc;

use braidkit::attack::AttackReport;
use braidkit::protocol::Preset;
use braidkit_cli::{run, summarize, Command, ExperimentConfig, Scheme};

fn report(success: bool, verdict: Option<bool>) -> AttackReport {
    let mut r = AttackReport::new("test");
    r.success = success;
    r.harness_verdict = verdict;
    r
}

#[test]
fn summarize_rates() {
    let all = vec![report(true, None); 5];
    assert_eq!(summarize(&all).unwrap().success_rate, 1.0);

    let mixed = vec![report(true, Some(true)), report(false, None), report(true, Some(false)), report(true, None)];
    let s = summarize(&mixed).unwrap();
    assert_eq!(s.success_rate, 0.75);
    assert_eq!(s.verdicts, Some((2, 1)));

    let mut reversed = mixed.clone();
    reversed.reverse();
    assert_eq!(summarize(&reversed).unwrap(), s);

    assert!(summarize(&[]).is_err());
}

#[test]
fn attack_without_oracle_has_no_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::new(Command::Attack);
    cfg.scheme = Some(Scheme::Ka(Preset::Klchkp));
    cfg.strands = 5;
    cfg.secret_len = 2;
    cfg.max_len = Some(2);
    cfg.out = dir.path().to_path_buf();
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, 0);
    let text = fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(!text.contains("harness_verdict"));
}

#[test]
fn simulate_then_attack_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let mut sim = ExperimentConfig::new(Command::Simulate);
    sim.scheme = Some(Scheme::Ka(Preset::Cklhc));
    sim.strands = 6;
    sim.secret_len = 2;
    sim.seed = 3;
    sim.out = dir.path().to_path_buf();
    assert_eq!(run(&sim).unwrap().exit_code, 0);

    let mut atk = ExperimentConfig::new(Command::Attack);
    atk.max_len = Some(2);
    atk.input = Some(dir.path().join("public.json"));
    atk.oracle = Some(dir.path().join("secret.json"));
    atk.out = dir.path().to_path_buf();
    assert_eq!(run(&atk).unwrap().exit_code, 0);
    let reports: Vec<AttackReport> =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(reports.iter().all(|r| r.harness_verdict == Some(true)));

    // wrong preset for this transcript
    atk.scheme = Some(Scheme::Ka(Preset::Klchkp));
    assert_eq!(run(&atk).unwrap_err().exit_code(), 2);
}

#[test]
fn config_errors() {
    let sim = ExperimentConfig::new(Command::Simulate);
    assert_eq!(run(&sim).unwrap_err().exit_code(), 2);
    let solve = ExperimentConfig::new(Command::Solve);
    assert_eq!(run(&solve).unwrap_err().exit_code(), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_braidkit");
    let dir = tempfile::tempdir().unwrap();
    let status = Proc::new(bin)
        .args(["simulate", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    let status = Proc::new(bin)
        .args(["selftest", "--seed", "1", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(dir.path().join("selftest.json").exists());
}
