use std::process::{Command, Output};

use serde_json::Value;

fn kgws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgws"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV output, split on commas, header comments and the
/// column line removed.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn spectrum_free_levels() {
    let out = kgws(&[
        "spectrum",
        "--variant",
        "real",
        "--V0",
        "0",
        "--q",
        "1",
        "--a",
        "1",
        "--m",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# kgws "));
    assert!(text.contains("# config: "));
    assert!(text.contains("n,branch,E_re,E_im,xi,b_signed,eps,physical,normalizable"));
    let table = rows(&text);
    assert_eq!(table.len(), 3);
    for (n, row) in table.iter().enumerate() {
        assert_eq!(num(&row[0]) as usize, n);
        let expected = (1.0 - (n as f64 / 2.0).powi(2)).sqrt();
        assert!((num(&row[2]) - expected).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn spectrum_names_violated_inequality() {
    let out = kgws(&[
        "spectrum",
        "--variant",
        "real",
        "--V0",
        "0.6",
        "--q",
        "1",
        "--a",
        "1",
        "--m",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("q^2 alpha^2 >= 4 V0^2"), "{err}");
}

#[test]
fn pt_deep_well_levels_are_negative() {
    let out = kgws(&[
        "spectrum",
        "--variant",
        "pt",
        "--V0",
        "6",
        "--q",
        "1",
        "--a",
        "1",
        "--m",
        "1",
    ]);
    assert!(out.status.success());
    let table = rows(&stdout(&out));
    assert!(!table.is_empty());
    for row in &table {
        assert!(num(&row[2]) < 0.0, "{row:?}");
    }
}

#[test]
fn json_spectrum_carries_complex_fields() {
    let out = kgws(&[
        "spectrum",
        "--variant",
        "pt",
        "--V0",
        "6",
        "--alpha",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["problem"]["V0"], 6.0);
    assert!(doc["version"].is_string());
    assert!(doc["levels"][0]["xi"].is_array());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("problem.json");
    std::fs::write(&path, r#"{"V0": 0.6, "q": 1.0, "alpha": 1.0}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(kgws(&["spectrum", "--config", p]).status.code(), Some(2));
    let out = kgws(&["spectrum", "--config", p, "--V0", "0.3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"V0\":0.3"));
    std::fs::write(&path, r#"{"V0": 0.3, "bogus": 1}"#).unwrap();
    assert_eq!(kgws(&["spectrum", "--config", p]).status.code(), Some(2));
}

#[test]
fn verify_real_fixtures_pass() {
    for q in [0.75, 1.0, 2.0] {
        let v0 = format!("{}", 0.4 * q);
        let q = format!("{q}");
        let out = kgws(&["verify", "--V0", &v0, "--q", &q, "--alpha", "1", "--m", "1"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(doc["passed"], true);
    }
}

#[test]
fn verify_detects_perturbed_energies() {
    let out = kgws(&[
        "verify",
        "--V0",
        "0.4",
        "--q",
        "1",
        "--alpha",
        "1",
        "--perturb-closed-form",
        "1e-3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], false);
}

#[test]
fn verify_free_problem_has_nothing_to_match() {
    let out = kgws(&["verify", "--V0", "0", "--q", "1", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["shooting"]["matched"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_skips_shooting_for_complex_variants() {
    let out = kgws(&["verify", "--variant", "pt", "--V0", "6", "--alpha", "1"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["shooting"].is_null());
    assert!(doc["shooting_skipped"].is_string());
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["scan", "--preset", "fig2a", "--steps", "40", "--jobs", "4"],
        &[
            "spectrum",
            "--variant",
            "pseudo",
            "--V0",
            "2",
            "--q",
            "-1",
            "--alpha",
            "1",
            "--all-candidates",
        ],
        &[
            "wavefunction",
            "--V0",
            "0.4",
            "--q",
            "1",
            "--alpha",
            "1",
            "--format",
            "json",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut texts = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{i}-{k}.out"));
            let mut full = args.to_vec();
            full.extend(["--output", path.to_str().unwrap()]);
            assert!(kgws(&full).status.success(), "{full:?}");
            texts.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(texts[0], texts[1], "{args:?}");
    }
    let single = kgws(&["scan", "--preset", "fig2a", "--steps", "40", "--jobs", "1"]);
    let many = kgws(&["scan", "--preset", "fig2a", "--steps", "40", "--jobs", "8"]);
    assert_eq!(single.stdout, many.stdout);
}

#[test]
fn scan_fig2a_has_at_most_three_levels_per_point() {
    let out = kgws(&["scan", "--preset", "fig2a", "--steps", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sweep_value,n,E_re,E_im,emitted"));
    let table = rows(&text);
    let mut points: Vec<&str> = table.iter().map(|r| r[0].as_str()).collect();
    points.dedup();
    assert_eq!(points.len(), 21);
    for p in points {
        let n = table.iter().filter(|r| r[0] == p).count();
        assert!(n <= 3);
    }
    assert!(table.iter().any(|r| r[4] == "true"));
}

#[test]
fn scan_is_continuous_along_the_sweep() {
    let out = kgws(&[
        "scan", "--preset", "fig2a", "--from", "1.2", "--to", "5", "--steps", "400",
    ]);
    let table = rows(&stdout(&out));
    for n in 0..3 {
        let series: Vec<(f64, f64)> = table
            .iter()
            .filter(|r| num(&r[1]) as usize == n && r[4] == "true")
            .map(|r| (num(&r[0]), num(&r[2])))
            .collect();
        let steps: Vec<f64> = series.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
        for (i, jump) in steps
            .iter()
            .enumerate()
            .skip(1)
            .take(steps.len().saturating_sub(2))
        {
            let local = steps[i - 1].max(steps[i + 1]).max(1e-9);
            assert!(*jump < 10.0 * local, "n = {n} near {:?}", series[i]);
        }
    }
}

#[test]
fn scan_needs_an_axis() {
    assert_eq!(kgws(&["scan", "--V0", "1"]).status.code(), Some(2));
    assert_eq!(kgws(&["scan", "--preset", "fig9"]).status.code(), Some(2));
    assert_ne!(
        kgws(&["scan", "--V0", "1", "--sweep", "q"]).status.code(),
        Some(0)
    );
}

fn sign_changes(text: &str) -> usize {
    let psi: Vec<f64> = rows(text)
        .iter()
        .map(|r| num(&r[3]))
        .filter(|v| v.is_finite() && *v != 0.0)
        .collect();
    psi.windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count()
}

fn header_value(text: &str, key: &str) -> String {
    let prefix = format!("# {key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("missing {key}"))
        .to_string()
}

#[test]
fn ground_state_wavefunction() {
    let out = kgws(&[
        "wavefunction",
        "--V0",
        "0.4",
        "--q",
        "1",
        "--alpha",
        "1",
        "--n",
        "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(num(&header_value(&text, "residual")) < 1e-7);
    assert!(header_value(&text, "norm").contains(','));
    assert_eq!(sign_changes(&text), 0);
}

#[test]
fn excited_wavefunctions_have_at_most_n_nodes() {
    for n in 1..=3 {
        let n_arg = n.to_string();
        let out = kgws(&[
            "wavefunction",
            "--V0",
            "0.03",
            "--alpha",
            "0.3",
            "--n",
            &n_arg,
            "--points",
            "4001",
        ]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert!(num(&header_value(&text, "residual")) < 1e-7);
        // both Jacobi parameters are below -1, so fewer than n zeros fall in (0, 1)
        assert!(sign_changes(&text) <= n, "n = {n}");
    }
}

#[test]
fn missing_level_is_a_config_error() {
    let out = kgws(&[
        "wavefunction",
        "--V0",
        "0.4",
        "--q",
        "1",
        "--alpha",
        "1",
        "--n",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
