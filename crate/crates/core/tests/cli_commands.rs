use oscint::cli::{run, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, TOL_ENV};
use oscint::symbolic::{parse_structured, verify_cancellation};

fn oscint(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("oscint").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn csv(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn eval_single_value() {
    let (code, out, _) = oscint(&["eval", "--k", "1", "--tau", "0"]);
    assert_eq!(code, EXIT_OK);
    let rows = csv(&out);
    assert_eq!(rows[0], ["k", "tau", "value", "method", "err_estimate"]);
    assert_eq!(rows[1][..2], ["1", "0"]);
    assert!(rows[1][2].starts_with("0.3926990816987"), "{}", rows[1][2]);
    assert_eq!(rows[1][3], "closed_form");
}

#[test]
fn eval_grid_shape() {
    let (code, out, _) = oscint(&["eval", "--k", "1..5", "--tau", "-6:10:321"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1 + 5 * 321);
}

#[test]
fn eval_with_oracle() {
    let (code, out, _) = oscint(&["eval", "--k", "2", "--tau", "3", "--oracle"]);
    assert_eq!(code, EXIT_OK);
    let rows = csv(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(
        (rows[1][3].as_str(), rows[2][3].as_str()),
        ("closed_form", "ode")
    );
    let a: f64 = rows[1][2].parse().unwrap();
    let b: f64 = rows[2][2].parse().unwrap();
    assert!((a - b).abs() < 1e-6);
}

#[test]
fn eval_is_deterministic() {
    let args = ["eval", "--k", "1..3", "--tau", "-2:4:25", "--oracle"];
    assert_eq!(oscint(&args).1, oscint(&args).1);
}

#[test]
fn eval_structured() {
    let (code, out, _) = oscint(&["eval", "--k", "1", "--tau", "0", "--format", "structured"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["method"], "closed_form");
}

#[test]
fn coeffs_text_and_structured() {
    let (code, out, _) = oscint(&["coeffs", "--k", "3", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("7π²/4"), "{out}");

    let (code, out, _) = oscint(&["coeffs", "--k", "1", "--format", "structured"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["prefactor"], "1/4");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["kind"], "Abs2");

    let (code, out, _) = oscint(&["coeffs", "--k", "6", "--format", "structured"]);
    assert_eq!(code, EXIT_OK);
    let expr = parse_structured(out.trim()).unwrap();
    assert!(verify_cancellation(&expr).pass);
}

#[test]
fn verify_suites_pass() {
    for suite in ["limits", "derivatives", "identities"] {
        let (code, out, err) = oscint(&["verify", "--suite", suite, "--tol", "1e-8"]);
        assert_eq!(code, EXIT_OK, "{suite}: {out}{err}");
        let json = out.lines().last().unwrap();
        let v: serde_json::Value = serde_json::from_str(json).unwrap();
        assert_eq!(v["suite"], suite);
        let results = v["results"].as_array().unwrap();
        assert!(!results.is_empty());
        assert!(results.iter().all(|r| r["pass"] == true));
    }
}

#[test]
fn verify_failure_and_env_tolerance() {
    let (code, out, _) = oscint(&["verify", "--suite", "limits", "--tol", "1e-20"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("FAIL"));

    // the only test that touches the variable
    std::env::set_var(TOL_ENV, "1e-20");
    let (code, _, _) = oscint(&["verify", "--suite", "limits"]);
    std::env::remove_var(TOL_ENV);
    assert_eq!(code, EXIT_VERIFY);
}

#[test]
fn figdata_shapes() {
    let (code, out, _) = oscint(&["figdata", "--fig", "z-trajectory", "--tau", "-10:20:600"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("tau,I1,J1"));
    assert_eq!(out.lines().count(), 601);

    let (code, out, _) = oscint(&["figdata", "--fig", "ik", "--k", "1..5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().next().unwrap().contains("k_factorial_scaled"));
    assert_eq!(out.lines().count(), 1 + 5 * 321);

    for fig in ["circle", "i1j1", "derivatives"] {
        let (code, out, err) = oscint(&["figdata", "--fig", fig]);
        assert_eq!(code, EXIT_OK, "{fig}: {err}");
        assert!(out.lines().count() > 100);
    }
}

#[test]
fn figdata_spectrum_has_deep_minima() {
    let (code, out, _) = oscint(&["figdata", "--fig", "spectrum"]);
    assert_eq!(code, EXIT_OK);
    let m: Vec<f64> = csv(&out)[1..]
        .iter()
        .map(|r| r[1].parse().unwrap())
        .collect();
    let peak = m.iter().cloned().fold(0.0, f64::max);
    let deep = (1..m.len() - 1)
        .filter(|&i| m[i] < m[i - 1] && m[i] < m[i + 1] && m[i] < 0.05 * peak)
        .count();
    assert!(deep >= 3);
}

#[test]
fn exit_codes() {
    assert_eq!(oscint(&["figdata", "--fig", "bogus"]).0, EXIT_USAGE);
    assert_eq!(oscint(&["eval", "--k", "0"]).0, EXIT_USAGE);
    assert_eq!(oscint(&["eval", "--tau", "3:1:5"]).0, EXIT_USAGE);
    assert_eq!(oscint(&["eval", "--frobnicate"]).0, EXIT_USAGE);
    assert_eq!(oscint(&["--help"]).0, EXIT_OK);

    // the ODE oracle refuses to start this close to the crossing
    let (code, _, err) = oscint(&["eval", "--tau", "1", "--oracle", "--tau-start", "-5"]);
    assert_eq!(code, EXIT_NUMERIC);
    assert!(err.contains("numeric failure in ode"), "{err}");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("oscint-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = oscint(&["eval", "--tau", "0", "--output", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written.lines().count(), 2);
}
