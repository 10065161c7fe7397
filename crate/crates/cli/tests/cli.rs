use std::process::{Command, Output};

fn bilap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Rows of the named table in a CSV artifact.
fn table_rows(text: &str, name: &str) -> Vec<Vec<String>> {
    let marker = format!("# table: {name}");
    let start = text.find(&marker).expect("table present") + marker.len();
    let body = &text[start..];
    let body = &body[..body.find("\n\n").unwrap_or(body.len())];
    let mut r = csv::Reader::from_reader(body.trim_start().as_bytes());
    r.records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn malformed_exponent_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = bilap(&[
        "coeffs",
        "--n",
        "5",
        "--s",
        "7/0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert_eq!(
        bilap(&["coeffs", "--n", "4", "--s", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bilap(&["verify", "--suite", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(bilap(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_input_file_is_a_usage_error() {
    let o = bilap(&[
        "fit",
        "--input",
        "/nonexistent/samples.csv",
        "--model",
        "power",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
}

#[test]
fn unfittable_samples_are_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("samples.csv");
    let mut text = String::from("r,value\n");
    for i in 0..12 {
        text.push_str(&format!(
            "{},{}\n",
            10f64.powi(-i),
            if i == 5 { -1.0 } else { 1.0 }
        ));
    }
    std::fs::write(&input, text).unwrap();
    let o = bilap(&[
        "fit",
        "--input",
        input.to_str().unwrap(),
        "--model",
        "power",
    ]);
    assert_eq!(
        o.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn header_records_the_configuration() {
    let o = bilap(&["coeffs", "--n", "6", "--s", "7/2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in [
        "build", "command", "args", "n", "s", "p", "rel_tol", "abs_tol", "sigma", "c_mode", "seed",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("# {key} = "))),
            "{key}"
        );
    }
    assert!(text.contains("# s = 7/2"));
}

#[test]
fn coefficients_at_n5_s9() {
    let o = bilap(&["coeffs", "--n", "5", "--s", "9/1"]);
    let rows = table_rows(&stdout(&o), "coefficients");
    let k0 = rows.iter().find(|r| r[2] == "K0").unwrap();
    // n²(n-4)²/16 at n = 5
    assert_eq!(k0[3], "25/16");
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.csv");
    let run = || {
        let o = bilap(&[
            "pohozaev",
            "--n",
            "5",
            "--s",
            "7",
            "--trials",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        std::fs::read(&p).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
}

#[test]
fn json_carries_config_results_and_ledger() {
    let o = bilap(&["coeffs", "--n", "5", "--s", "9", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["config"]["seed"].is_number() || v["config"]["seed"].is_string());
    assert!(v["config"].get("sigma_used").is_some());
    assert!(v["results"]["coefficients"].as_array().unwrap().len() >= 6);
    assert!(!v["ledger"].as_array().unwrap().is_empty());
}

#[test]
fn signs_cover_the_requested_grid() {
    let o = bilap(&["signs", "--n", "5:7", "--s-grid", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    // 8 evenly spaced points with both ends excluded leave 6 per dimension
    assert!(text.contains("hold at 18 of 18 points"), "{text}");
}

#[test]
fn classify_names_the_regime() {
    let o = bilap(&["classify", "--n", "5", "--s", "7"]);
    let text = stdout(&o);
    assert!(text.contains("GIDAS_SPRUCK"));
    assert!(text.contains("K0 = 112/81"));
}

#[test]
fn gnuplot_companion_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let o = bilap(&[
        "integrate",
        "--n",
        "5",
        "--s",
        "7",
        "--init",
        "1,0,0,0",
        "--t-end",
        "1",
        "--gnuplot",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let script = std::fs::read_to_string(dir.path().join("traj.gp")).unwrap();
    assert!(script.contains("plot"));
}

#[test]
fn pinned_verify_subset_succeeds() {
    let o = bilap(&["verify", "--suite", "pohozaev", "--n", "6", "--s", "2"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let rows = table_rows(&stdout(&o), "checks");
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| !r.contains(&"FAIL".to_string())));
}

#[test]
fn synthetic_power_fit_recovers_the_exponent() {
    let o = bilap(&[
        "fit",
        "--n",
        "5",
        "--s",
        "7",
        "--synthetic",
        "power",
        "--model",
        "power",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = table_rows(&stdout(&o), "fit");
    let text = stdout(&o);
    let header = text
        .lines()
        .skip_while(|l| *l != "# table: fit")
        .nth(1)
        .unwrap();
    let col = header.split(',').position(|h| h == "exponent").unwrap();
    let e: f64 = rows[0][col].parse().unwrap();
    assert!((e - 2.0 / 3.0).abs() < 1e-9, "{e}");
}
