use std::path::Path;
use std::process::{Command, Output};

use cqed_qecc::cli::{load_csv, CSV_HEADER};

const BIN: &str = env!("CARGO_BIN_EXE_cqed-qecc");

const SMALL: &str = r#"
[protocol]
alpha_sq = 0.7
t_cav = 50.0
n_traj = 40
seed = 12

[sweep]
parameter = "phi_max"
values = [0.0, 2.0, 5.0]
"#;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("CQED_QECC_SEED")
        .output()
        .unwrap()
}

#[test]
fn csv_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let cfg = cfg.to_str().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("w{workers}.csv"));
        let res = run(&["--config", cfg, "--workers", workers, "--out", out.to_str().unwrap()], dir.path());
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    let rows = load_csv(&dir.path().join("w1.csv")).unwrap();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(r.n_traj, 40);
        let f = r.f_corr.unwrap();
        assert!((0.0..=1.0).contains(&f) && (0.0..=1.0).contains(&r.f_uncorr));
        assert_eq!(r.syn_mm + r.syn_pm + r.syn_mp + r.syn_pp, 40);
    }
}

#[test]
fn seed_flag_and_environment_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let cfg = cfg.to_str().unwrap();
    let flag = run(&["--config", cfg, "--workers", "2", "--seed", "77"], dir.path());
    let env = Command::new(BIN)
        .args(["--config", cfg, "--workers", "2"])
        .env("CQED_QECC_SEED", "77")
        .output()
        .unwrap();
    let other = run(&["--config", cfg, "--workers", "2", "--seed", "78"], dir.path());
    assert!(flag.status.success() && env.status.success() && other.status.success());
    assert_eq!(flag.stdout, env.stdout);
    assert_ne!(flag.stdout, other.stdout);
}

#[test]
fn single_point_run_writes_header_and_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("one.toml");
    std::fs::write(&cfg, "[protocol]\nn_traj = 10\nphi_max = 1.0\n").unwrap();
    let res = run(&["--config", cfg.to_str().unwrap(), "--workers", "1"], dir.path());
    assert!(res.status.success());
    let text = String::from_utf8(res.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn no_correction_leaves_corrected_columns_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("one.toml");
    std::fs::write(&cfg, "[protocol]\nn_traj = 10\nphi_max = 1.0\n").unwrap();
    let out = dir.path().join("base.csv");
    let res = run(
        &["--config", cfg.to_str().unwrap(), "--no-correction", "--out", out.to_str().unwrap()],
        dir.path(),
    );
    assert!(res.status.success());
    let rows = load_csv(&out).unwrap();
    assert_eq!(rows[0].f_corr, None);
    assert_eq!(rows[0].f_corr_se, None);
}

#[test]
fn plot_log_and_analytic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let svg = dir.path().join("f.svg");
    let log = dir.path().join("traj.jsonl");
    let res = run(
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--plot",
            svg.to_str().unwrap(),
            "--trajectory-log",
            log.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(res.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let lines: Vec<String> = std::fs::read_to_string(&log).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 3 * 2 * 40);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert!(first.get("overlap").is_some() && first.get("variant").is_some());

    let res = run(&["--analytic-only"], dir.path());
    assert!(res.status.success());
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.lines().count() > 10);
}

#[test]
fn bad_config_fails_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[protocol]\nalpha_sq = 1.5\n").unwrap();
    let res = run(&["--config", cfg.to_str().unwrap()], dir.path());
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("error"));

    std::fs::write(&cfg, "[protocol]\nbogus = 1\n").unwrap();
    let res = run(&["--config", cfg.to_str().unwrap()], dir.path());
    assert!(!res.status.success());

    let res = run(&["--config", "/nonexistent/run.toml"], dir.path());
    assert!(!res.status.success());
}
