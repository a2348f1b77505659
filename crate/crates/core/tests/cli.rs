mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oscihaz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscihaz"))
        .args(args)
        .env_remove("OSCIHAZ_SEED")
        .output()
        .expect("run oscihaz")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn fit_weibull_reports_two_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write(dir.path(), "toy.csv", "time,status\n0.5,1\n1.2,1\n2.0,0\n0.8,1\n3.1,1\n1.7,0\n");
    let json: Value = serde_json::from_str(&stdout(&oscihaz(&["fit", "--model", "weibull", "--input", &toy, "--seed", "7"]))).unwrap();
    assert_eq!(json["k"], 2);
    assert_eq!(json["n"], 6);
    assert_eq!(json["params"]["model"], "weibull");
    let (loglik, bic) = (json["loglik"].as_f64().unwrap(), json["bic"].as_f64().unwrap());
    assert_eq!(bic, 2.0 * 6f64.ln() - 2.0 * loglik);
    // JSON floats round-trip exactly
    let again: Value = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
    assert_eq!(again, json);
}

#[test]
fn fit_ho_on_rotterdam() {
    let args = [
        "fit", "--model", "ho", "--input", common::ROTTERDAM, "--dt", "0.08333333", "--s1", "0.999", "--s2", "0.998",
        "--seed", "7",
    ];
    let json: Value = serde_json::from_str(&stdout(&oscihaz(&args))).unwrap();
    let bic = json["bic"].as_f64().unwrap();
    assert!((bic - 9581.04).abs() <= 1.0, "{bic}");
}

#[test]
fn missing_input_names_the_path() {
    let out = oscihaz(&["fit", "--model", "weibull", "--input", "/nonexistent/toy.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/toy.csv"));
}

#[test]
fn km_on_three_events() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write(dir.path(), "toy.csv", "time,status\n1,1\n2,1\n3,1\n");
    let text = stdout(&oscihaz(&["km", "--input", &toy]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("time,survival,at_risk,deaths"));
    let survival: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(survival.len(), 3);
    for (s, want) in survival.iter().zip([2.0 / 3.0, 1.0 / 3.0, 0.0]) {
        assert!((s - want).abs() < 1e-12);
    }
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", "--eta", "0.6", "--w0", "1", "--hb", "1", "--h0", "2", "--r0", "0", "--n", "100", "--seed", "1"];
    let a = stdout(&oscihaz(&args));
    assert_eq!(a, stdout(&oscihaz(&args)));
    assert!(a.starts_with("time,status\n"));
    assert_eq!(a.lines().count(), 101);
}

#[test]
fn inadmissible_parameters_exit_2() {
    for cmd in ["curves", "simulate"] {
        let mut args = vec![cmd, "--eta", "0.1", "--w0", "5", "--hb", "1", "--h0", "1", "--r0", "-50"];
        if cmd == "simulate" {
            args.extend(["--n", "10"]);
        }
        let out = oscihaz(&args);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("\"admissible\":false") && err.contains("min_value"), "{err}");
    }
}

#[test]
fn curves_csv_layout() {
    let text = stdout(&oscihaz(&[
        "curves", "--eta", "0.6", "--w0", "1", "--hb", "1", "--h0", "2", "--r0", "0", "--grid-max", "5", "--grid-points",
        "11",
    ]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("time,hazard,cumulative_hazard,survival"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 2.0, 0.0, 1.0]);
    assert_eq!(lines.count(), 10);
}

#[test]
fn compare_tables() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("cmp.json");
    let text = stdout(&oscihaz(&[
        "compare", "--input", common::ROTTERDAM, "--seed", "2", "--json", json_path.to_str().unwrap(),
    ]));
    let order: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(order, ["ho", "pgw", "weibull"]);
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(rows[0]["delta_bic"], 0.0);
    assert!(rows[2]["delta_bic"].as_f64().unwrap() > rows[1]["delta_bic"].as_f64().unwrap());

    let single = stdout(&oscihaz(&["compare", "--input", common::ROTTERDAM, "--models", "weibull"]));
    assert_eq!(single.lines().count(), 2);
}

#[test]
fn compare_without_events_fails() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write(dir.path(), "cens.csv", "time,status\n1,0\n2,0\n");
    let out = oscihaz(&["compare", "--input", &toy]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).to_lowercase().contains("no events"));
}

#[test]
fn bayes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let draws = dir.path().join("draws.csv");
    let curves = dir.path().join("curves.csv");
    let text = stdout(&oscihaz(&[
        "bayes", "--input", common::ROTTERDAM, "--iters", "4000", "--burn-in", "1000", "--thin", "3", "--seed", "4",
        "--grid-max", "15", "--grid-points", "300", "--draws-out", draws.to_str().unwrap(), "--curves-out",
        curves.to_str().unwrap(),
    ]));
    let summary: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(summary["draws"], 1000);
    assert_eq!(summary["seed"], 4);
    let rate = summary["acceptance_rate"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&rate));

    let draws = std::fs::read_to_string(draws).unwrap();
    assert!(draws.starts_with("eta,w0,hb,log_post\n"));
    assert_eq!(draws.lines().count(), 1001);

    let curves = std::fs::read_to_string(curves).unwrap();
    let mut lines = curves.lines();
    assert_eq!(
        lines.next(),
        Some("time,hazard_mean,hazard_lo,hazard_hi,survival_mean,survival_lo,survival_hi")
    );
    let survival: Vec<f64> = lines.map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert_eq!(survival.len(), 300);
    assert_eq!(survival[0], 1.0);
    assert!(survival.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn seed_falls_back_to_environment() {
    let args = ["simulate", "--eta", "1.5", "--w0", "1", "--hb", "1", "--h0", "0.5", "--r0", "0.2", "--n", "20"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_oscihaz")).args(args).env("OSCIHAZ_SEED", "99").output().unwrap();
    let with_flag = oscihaz(&[&args[..], &["--seed", "99"]].concat());
    assert_eq!(with_env.stdout, with_flag.stdout);
    assert_ne!(with_env.stdout, oscihaz(&args).stdout);
}
