use std::process::{Command, Output};

fn ccsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn symbol_example() {
    let o = ccsym(&[
        "symbol",
        "--algebra",
        "gens=eps;degree=2;scalars=exact",
        "--f",
        "(1-eps*x^-1)",
        "--g",
        "(1-x)",
        "--trunc",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1+eps");
}

#[test]
fn symbol_float_backend() {
    let o = ccsym(&[
        "symbol",
        "--algebra",
        "gens=eps;degree=2;scalars=float",
        "--f",
        "(1-eps*x^-1)",
        "--g",
        "(1-x)",
        "--trunc",
        "8",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"]["1"], serde_json::json!([1.0, 0.0]));
    assert_eq!(v["value"]["eps"], serde_json::json!([1.0, 0.0]));
}

#[test]
fn symbol_of_rational_functions_at_point() {
    // ⟨x, 1-x⟩ at 0 is (-1)^0 · (1-x)(0)^1 = 1
    let o = ccsym(&["symbol", "--f", "(x)", "--g", "(1-x)", "--point", "0"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = ccsym(&["tame", "--f", "(x-2)", "--g", "(x-2)", "--point", "2"]);
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn lemma_json_report() {
    let o = ccsym(&["verify", "lemma", "--id", "3.2", "--r", "2", "--radius", "1/2", "--steps", "512", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["check_id"], "lemma.3.2");
    for key in ["inputs", "lhs", "rhs", "deviation", "tolerance", "runtime_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn weil_example() {
    let o = ccsym(&["verify", "weil", "--f", "(x)", "--g", "(1-x)", "--trunc", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "lhs       1"), "{out}");
    assert!(out.contains("PASS"));
}

#[test]
fn failing_check_exits_one() {
    // two steps per segment on off-centre circles is far from 1e-14
    let o = ccsym(&[
        "verify",
        "commutator",
        "--alpha",
        "circle(1/3,1/2)",
        "--beta",
        "circle(1/2,1/3)",
        "--f",
        "(x)",
        "--g",
        "(x-1)",
        "--steps",
        "2",
        "--tol",
        "1e-14",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["symbol", "--f", "(1-", "--g", "x"][..],
        &["verify", "lemma", "--id", "9.9"],
        &["verify", "lemma", "--id", "3.4"],
        &["symbol", "--algebra", "gens=eps;degree=0", "--f", "x", "--g", "x"],
        &["integrate", "--f", "(x)", "--path", "circle(0,1)", "--steps", "0"],
        &["verify", "bogus"],
    ] {
        let o = ccsym(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn integrate_winding() {
    let o = ccsym(&["integrate", "--f", "(x)", "--path", "circle(0,1/2)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let im = v["df/f"]["value"]["1"][1].as_f64().unwrap();
    assert!((im - 2.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn identities_all_pass() {
    let o = ccsym(&["verify", "identities", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn factorize_prints_factors() {
    let o = ccsym(&[
        "factorize",
        "--algebra",
        "gens=eps;degree=2;scalars=exact",
        "--f",
        "x^-2*(1-eps*x^-1)*(1-x)",
        "--trunc",
        "8",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu"], -2);
    assert_eq!(v["neg_factors"]["-1"]["eps"], serde_json::json!([1.0, 0.0]));
    assert_eq!(v["pos_factors"]["1"]["1"], serde_json::json!([1.0, 0.0]));
}
