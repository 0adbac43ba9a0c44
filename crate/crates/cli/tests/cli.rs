use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn eval_q_row_count_and_value_at_zero() {
    let out = run(&["eval", "--what", "q", "--b", "1", "--iota", "1", "--sigma", "6", "--n", "1", "--k", "0", "--parity", "+1", "--t", "0:2:0.1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,q");
    assert_eq!(lines.len() - 1, 21);

    let out = run(&["eval", "--what", "q", "--n", "0", "--k", "0", "--parity", "+1", "--t", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let q0: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(q0, 1.0);
}

#[test]
fn transform_outside_domain_is_usage_error() {
    assert_eq!(code(&["transform", "--b", "1", "--iota", "1", "--sigma", "3"]), 2);
    assert_eq!(code(&["eval", "--what", "wtilde", "--sigma", "4", "--nu", "1"]), 2);
}

#[test]
fn verify_bernstein_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&["verify", "bernstein", "--b", "1/2", "--iota", "2", "--sigma", "8", "--out", p]), 0);
    let reports: serde_json::Value = serde_json::from_str(&read(&path)).unwrap();
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["pass"], true);
        assert_eq!(r["max_abs_dev"], 0.0);
        for key in ["test", "params", "max_rel_dev", "tolerance", "seconds"] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn malformed_input_is_usage_error() {
    assert_eq!(code(&["verify", "bernstein", "--b", "1//2"]), 2);
    assert_eq!(code(&["verify", "bernstein", "--b", "0.5", "--iota", "2", "--sigma", "8"]), 2);
    assert_eq!(code(&["verify", "nonsense"]), 2);
    assert_eq!(code(&["eval", "--what", "q", "--t", "1:0:0.1"]), 2);
    assert_eq!(code(&["eval", "--what", "q"]), 2);
    assert_eq!(code(&["eval", "--what", "q", "--t", "0", "--parity", "2"]), 2);
    assert_eq!(code(&["gram", "--tol", "7"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn gram_dimension_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let json = dir.path().join("g.json");
    let args = ["gram", "--n-max", "3", "--out", csv.to_str().unwrap(), "--report", json.to_str().unwrap()];
    assert_eq!(code(&args), 0);
    let text = read(&csv);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], ["i", "0", "1", "2", "3"]);
    assert!(rows[1..].iter().all(|r| r.len() == 5));
    let d0: f64 = rows[1][1].parse().unwrap();
    assert!((d0 - 0.8).abs() < 1e-8);
    let report: serde_json::Value = serde_json::from_str(&read(&json)).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["max_rel_dev"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &["verify", "gram", "--n-max", "3", "--k-max", "1", "--no-timing"],
        &["transform", "--n", "2", "--k", "1", "--parity", "-1", "--nu", "0.5:2:0.5"],
        &["spectral-density", "--b", "1/2", "--iota", "2", "--sigma", "8", "--nu", "0.1:3:0.1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let paths: Vec<_> = (0..2).map(|j| dir.path().join(format!("{i}-{j}.out"))).collect();
        for p in &paths {
            let mut full = args.to_vec();
            full.extend(["--out", p.to_str().unwrap()]);
            assert_eq!(code(&full), 0, "{args:?}");
        }
        assert_eq!(read(&paths[0]), read(&paths[1]), "{args:?}");
    }
}

#[test]
fn verify_all_at_reference_point() {
    let out = run(&["verify", "all", "--b", "1", "--iota", "1", "--sigma", "6", "--n-max", "4", "--k-max", "2", "--no-timing"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn span_export_and_environment_overrides() {
    let out = run(&["eval", "--what", "span", "--n", "1", "--k", "0", "--parity", "+1", "--format", "json"]);
    assert!(out.status.success());
    let terms: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(terms, serde_json::json!([{"m": 0, "eps": 0, "num": "4", "den": "1"}, {"m": 1, "eps": 0, "num": "-6", "den": "1"}]));

    let env_run = |key: &str, val: &str| {
        Command::new(env!("CARGO_BIN_EXE_cherednik"))
            .args(["verify", "wtilde", "--no-timing"])
            .env(key, val)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(env_run("CHEREDNIK_TOL", "1e-9"), 0);
    assert_eq!(env_run("CHEREDNIK_TOL", "abc"), 2);
    assert_eq!(env_run("CHEREDNIK_THREADS", "1"), 0);
    assert_eq!(env_run("CHEREDNIK_THREADS", "0"), 2);
}
