use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::io::Write;

use serde_json::Value;
use wishart_moments::cli::{run, Outcome, EXIT_BUDGET, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn wishart(args: &[&str]) -> Outcome {
    wishart_with_stdin(args, "")
}

fn wishart_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("wishart").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json(outcome: &Outcome) -> Value {
    assert_eq!(outcome.code, EXIT_OK, "stderr: {}", outcome.stderr);
    serde_json::from_str(&outcome.stdout).expect("stdout is JSON")
}

fn complex(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn worked_example_cumulants() {
    let doc = json(&wishart(&["cumulants", "--order", "3", &data("worked_example.json")]));
    assert_eq!(doc["command"], "cumulants");
    assert_eq!(doc["convention"], "paper");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["input_sha256"].as_str().unwrap().len(), 64);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    // n Tr Σ − Tr M = 3·0.03243 − 0.0010
    let (re, im) = complex(&results[0]["value"]);
    assert!((re - 0.09629).abs() < 1e-12 && im.abs() < 1e-15);
    let (re, im) = complex(&results[1]["value"]);
    assert!((re - 1.2425207e-3).abs() < 1e-12);
    assert!((im - 2.85e-4).abs() < 1e-12);
}

#[test]
fn convention_flag_overrides_file() {
    let doc = json(&wishart(&["cumulants", "--order", "1", "--convention", "standard", &data("worked_example.json")]));
    assert_eq!(doc["convention"], "standard");
    let (re, _) = complex(&doc["results"][0]["value"]);
    assert!((re - (3.0 * 0.03243 + 0.001)).abs() < 1e-12);
}

#[test]
fn necklaces_of_three_distinct_symbols() {
    let doc = json(&wishart(&["necklaces", "--kind", "1,1,1"]));
    let reps: Vec<&str> =
        doc["results"]["necklaces"].as_array().unwrap().iter().map(|n| n["representative"].as_str().unwrap()).collect();
    assert_eq!(reps, ["123", "132"]);
    assert_eq!(doc["results"]["count"], 2);
    assert_eq!(doc["convention"], "paper");
}

#[test]
fn malformed_json_is_a_validation_error() {
    let out = wishart_with_stdin(&["moments", "-"], "{\"n\": 2,");
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("malformed"));
    let unknown = wishart_with_stdin(&["moments", "-"], r#"{"n": 2, "sigma": {"re": [[1]]}, "mu": 1}"#);
    assert_eq!(unknown.code, EXIT_VALIDATION);
    assert!(unknown.stderr.contains("mu"));
}

#[test]
fn invalid_matrices_name_the_field() {
    let out = wishart_with_stdin(&["moments", "-"], r#"{"n": 2, "sigma": {"re": [[1, 2], [0, 1]]}}"#);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("sigma"), "{}", out.stderr);
    let out = wishart_with_stdin(&["moments", "-"], r#"{"n": 2, "sigma": {"re": [[1]]}, "m_matrix": {"re": [[1, 0], [0, 1]]}}"#);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("m_matrix"), "{}", out.stderr);
    let out = wishart_with_stdin(&["moments", "-"], r#"{"n": -1, "sigma": {"re": [[1]]}}"#);
    assert_eq!(out.code, EXIT_VALIDATION);
    let out = wishart_with_stdin(&["joint-moments", "-"], r#"{"n": 2, "sigma": {"re": [[1]]}}"#);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("h:"));
    assert_eq!(wishart(&["moments"]).code, EXIT_VALIDATION);
    assert_eq!(wishart(&["moments", "/nonexistent/params.json"]).code, EXIT_VALIDATION);
}

#[test]
fn overflow_is_a_numerical_error() {
    let out = wishart_with_stdin(&["moments", "--order", "3", "-"], r#"{"n": 1, "sigma": {"re": [[1e200]]}}"#);
    assert_eq!(out.code, EXIT_NUMERICAL);
    assert!(out.stdout.is_empty());
}

#[test]
fn budget_exceeded_exit_code() {
    let out = wishart(&["necklaces", "--kind", "6,6"]);
    assert_eq!(out.code, EXIT_BUDGET, "{}", out.stderr);
    let out = wishart(&["joint-moments", "--index", "6,6", &data("two_by_two.json")]);
    assert_eq!(out.code, EXIT_BUDGET);
}

#[test]
fn budget_env_override_through_the_binary() {
    let bin = env!("CARGO_BIN_EXE_wishart");
    let denied = Command::new(bin).args(["necklaces", "--kind", "6,5"]).env_remove("WISHART_MAX_BUDGET").output().unwrap();
    assert_eq!(denied.status.code(), Some(EXIT_BUDGET));
    let allowed = Command::new(bin).args(["necklaces", "--kind", "6,5"]).env("WISHART_MAX_BUDGET", "11").output().unwrap();
    assert_eq!(allowed.status.code(), Some(EXIT_OK));
    let doc: Value = serde_json::from_slice(&allowed.stdout).unwrap();
    // Every necklace of kind (6,5) is primitive: C(11,5)/11.
    assert_eq!(doc["results"]["count"], 42);
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wishart"))
        .args(["moments", "--order", "2", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"n": 4, "sigma": {"re": [[1]]}}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    // E[(Tr W)^2] = n² + n for Σ = 1
    assert_eq!(complex(&doc["results"][1]["value"]).0, 20.0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["joint-cumulants", "--index", "1,2"],
        vec!["generalized", "--cycles", "(1 2)"],
        vec!["mc-verify", "--samples", "2000", "--seed", "7", "--index", "1,1"],
    ] {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full.push(data("two_by_two.json"));
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let a = wishart(&refs);
        let b = wishart(&refs);
        assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn csv_has_header_and_split_complex_columns() {
    let out = wishart(&["moments", "--order", "2", "--format", "csv", &data("two_by_two.json")]);
    assert_eq!(out.code, EXIT_OK);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next().unwrap(), "command,convention,version,input_sha256,order,value_re,value_im");
    assert_eq!(lines.count(), 2);
}

#[test]
fn generalized_reports_expansion() {
    let doc = json(&wishart(&["generalized", "--cycles", "(1 2)", &data("two_by_two.json")]));
    let r = &doc["results"];
    assert_eq!(r["permutation"], "(1 2)");
    assert_eq!(r["fully_evaluated"], false);
    let terms = r["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    let mut total = (0.0, 0.0);
    for t in terms {
        let v = if t["symbolic"] == true { complex(&t["mixed_value"]) } else { complex(&t["value"]) };
        total.0 += v.0;
        total.1 += v.1;
    }
    let (re, im) = complex(&r["moment"]);
    assert!((total.0 - re).abs() < 1e-10 && (total.1 - im).abs() < 1e-10);
    assert_eq!(wishart(&["generalized", "--cycles", "(1 3)", &data("two_by_two.json")]).code, EXIT_VALIDATION);
}

#[test]
fn permanent_master_route() {
    let doc = json(&wishart(&["permanent", "--d", "0.5+0.5i", "--index", "2,1,0", &data("worked_example.json")]));
    let master = &doc["results"]["master"];
    assert!(master["relative_deviation"].as_f64().unwrap() < 1e-10);
    let doc = json(&wishart(&["permanent", "--alpha", "1,1,1", "--index", "1,1,1", &data("worked_example.json")]));
    let plain = json(&wishart(&["permanent", "--d", "1", "--index", "1,1,1", &data("worked_example.json")]));
    assert_eq!(doc["results"]["brute_force"], plain["results"]["brute_force"]);
}

#[test]
fn polykay_command() {
    let input = r#"{"sigma": {"re": [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 4, 0], [0, 0, 0, 3]]}}"#;
    let out = wishart_with_stdin(&["polykay", "--order", "2", "--compress", "3", "--samples", "500", "-"], input);
    let doc = json(&out);
    let rows = doc["results"]["polykays"].as_array().unwrap();
    assert_eq!(rows[0]["value"].as_f64().unwrap(), 2.5);
    assert!(rows[1]["haar_mean"].is_number());
    let degenerate = wishart_with_stdin(&["polykay", "--order", "4", "-"], r#"{"sigma": {"re": [[1, 0], [0, 2]]}}"#);
    assert_eq!(degenerate.code, EXIT_VALIDATION);
}

#[test]
fn mc_verify_agrees_with_closed_forms() {
    let doc = json(&wishart(&[
        "mc-verify",
        "--samples",
        "20000",
        "--seed",
        "3",
        "--index",
        "1,1",
        "--identity",
        "m-split",
        &data("two_by_two.json"),
    ]));
    assert_eq!(doc["convention"], "standard");
    for row in doc["results"].as_array().unwrap() {
        assert!(row["z_score"].as_f64().unwrap() < 4.5, "{row}");
    }
    let paper = json(&wishart(&["mc-verify", "--samples", "2000", "--convention", "paper", &data("two_by_two.json")]));
    assert_eq!(paper["convention"], "standard");
    assert!(!paper["warnings"].as_array().unwrap().is_empty());
    // The worked example's Σ is indefinite, so it cannot be sampled.
    let out = wishart(&["mc-verify", "--samples", "2000", &data("worked_example.json")]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("positive semidefinite"), "{}", out.stderr);
}
