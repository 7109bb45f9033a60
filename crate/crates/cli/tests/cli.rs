use std::process::{Command, Output};

fn mbkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbkit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value_line(o: &Output) -> f64 {
    let s = stdout(o);
    let line = s.lines().find(|l| l.starts_with("value:")).unwrap();
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

fn field(s: &str, key: &str) -> f64 {
    let line = s.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no {key} in {s}"));
    line[key.len()..].split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn verify_json_report() {
    let o = mbkit(&["verify", "--id", "cahen-4.7i", "--samples", "5", "--seed", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], "1");
    assert_eq!(v["seed"], 1);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 1);
    assert_eq!(cases[0]["id"], "cahen-4.7i");
    assert_eq!(cases[0]["pass"], true);
    let samples = cases[0]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 5);
    for s in samples {
        assert_eq!(s["lhs"].as_array().unwrap().len(), 2);
        assert!(s["params"]["y"].is_number());
    }
}

#[test]
fn usage_errors_exit_2_without_output() {
    for args in [
        &["verify", "--id", "no-such-id"][..],
        &["verify", "--samples", "0"],
        &["eval", "gamma", "--re", "0.5", "--method", "mb"],
        &["eval", "besselk", "--p", "0.5", "--x", "-1"],
        &["eval", "kummerm", "--a", "1.5", "--b", "3", "--x", "2", "--method", "mb"],
        &["pullback", "circle"],
        &["bench", "--points", "0"],
    ] {
        let o = mbkit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn failing_tolerance_exits_1() {
    let o = mbkit(&["verify", "--id", "cahen-4.7i", "--samples", "2", "--tol-exponential", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn unwritable_output_exits_3() {
    let o = mbkit(&["verify", "--id", "cahen-4.7i", "--samples", "1", "--output", "/nonexistent-dir/report.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_mbkit"))
        .args(["eval", "gamma", "--re", "1"])
        .env("MBKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_mbkit"))
        .args(["eval", "gamma", "--re", "1"])
        .env("MBKIT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn config_file_merges_under_flags() {
    let dir = std::env::temp_dir().join(format!("mbkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    std::fs::write(&cfg, r#"{"id": ["cahen-4.7i"], "samples": 3, "seed": 5, "format": "csv"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let o = mbkit(&["verify", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("id,sample,params,"));
    assert_eq!(csv.lines().count(), 4);

    let o = mbkit(&["verify", "--config", cfg, "--samples", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["cases"][0]["samples"].as_array().unwrap().len(), 2);

    std::fs::write(dir.join("bad.json"), r#"{"sample": 3}"#).unwrap();
    let o = mbkit(&["verify", "--config", dir.join("bad.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn eval_routes_agree() {
    let k = (std::f64::consts::PI / 4.0).sqrt() * (-2f64).exp();
    let oracle = value_line(&mbkit(&["eval", "besselk", "--p", "0.5", "--x", "2", "--method", "oracle"]));
    let o = mbkit(&["eval", "besselk", "--p", "0.5", "--x", "2", "--method", "mb"]);
    let mb = value_line(&o);
    assert!((oracle - k).abs() < 1e-12 * k);
    assert!((mb - oracle).abs() < 1e-8 * k);
    let s = stdout(&o);
    for key in ["truncation_t:", "evaluations:", "error_estimate:"] {
        assert!(s.contains(key), "{s}");
    }

    let g = value_line(&mbkit(&["eval", "gamma", "--re", "0.5", "--im", "0"]));
    assert!((g - 1.7724538509).abs() < 1e-10);

    for args in [
        &["besseli", "--p", "1.5", "--x", "2"][..],
        &["besselj", "--p", "1.5", "--x", "3"],
        &["besselj", "--p", "-0.3", "--x", "3"],
        &["kummerm", "--a", "1.5", "--b", "3", "--x", "-2"],
        &["kummeru", "--a", "2", "--b", "0.5", "--x", "1.5"],
        &["2f1", "--a", "1.5", "--b", "2", "--c", "3", "--z", "-0.5"],
        &["beta", "--p", "2.5", "--q", "1.5"],
    ] {
        let run = |m: &str| {
            let mut a = vec!["eval"];
            a.extend_from_slice(args);
            a.extend_from_slice(&["--method", m]);
            value_line(&mbkit(&a))
        };
        let (x, y) = (run("mb"), run("oracle"));
        assert!((x - y).abs() < 1e-8 * y.abs(), "{args:?}: {x} vs {y}");
    }
}

#[test]
fn pullback_reports_three_routes() {
    for (name, exact) in [("line", 0.25), ("gelfand", 0.9139312), ("hyperbola", 0.2277877)] {
        let o = mbkit(&["pullback", name]);
        assert_eq!(o.status.code(), Some(0));
        let s = stdout(&o);
        let (m, su, osc) = (field(&s, "mollified:"), field(&s, "surface:"), field(&s, "oscillatory:"));
        assert!((su - exact).abs() < 1e-6, "{s}");
        assert!((m - su).abs() < 1e-6, "{s}");
        let tol = if name == "hyperbola" { 1e-3 } else { 1e-6 };
        assert!((osc - su).abs() < tol, "{s}");
        assert!(s.contains("|mollified - surface|:") && s.contains("|oscillatory - surface|:"));
    }
}

#[test]
fn bench_csv() {
    let o = mbkit(&["bench", "--function", "besselk", "--points", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["function", "params", "route", "wall_time", "value", "cross_route_rel_err"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    for row in &rows {
        assert!(row[5].parse::<f64>().unwrap() < 1e-6);
    }

    let again = mbkit(&["bench", "--function", "besselk", "--points", "10"]);
    let mut r2 = csv::Reader::from_reader(again.stdout.as_slice());
    let values: Vec<String> = r2.records().map(|x| x.unwrap()[4].to_string()).collect();
    assert_eq!(values, rows.iter().map(|x| x[4].to_string()).collect::<Vec<_>>());

    for f in ["besselj", "2f1"] {
        let o = mbkit(&["bench", "--function", f, "--points", "4"]);
        let mut r = csv::Reader::from_reader(o.stdout.as_slice());
        for row in r.records() {
            assert!(row.unwrap()[5].parse::<f64>().unwrap() < 1e-6, "{f}");
        }
    }
}
