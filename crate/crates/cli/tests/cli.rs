use std::io::Write;
use std::process::{Command, Stdio};

use extrainv_cli::{cmd_analyze, cmd_construct, cmd_invariance_set, ProblemFile, EXIT_INPUT, EXIT_NOT_INVARIANT};
use serde_json::Value;

const RUNNING: &str = r#"{
  "group": {"moduli": [8]},
  "H": {"generators": [[4]]},
  "M": {"generators": [[2]]},
  "generators": [{"spectrum": [[1,0],[1,0],[0,0],[0,0],[1,0],[1,0],[0,0],[0,0]]}]
}"#;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_extrainv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn elements(v: &Value) -> Vec<i64> {
    v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[0].as_i64().unwrap())
        .collect()
}

#[test]
fn analyze_exit_codes() {
    let (code, out, _) = run(&["analyze"], RUNNING);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["verdict"], true);
    assert_eq!(report["criteria_agree"], true);

    let whole = RUNNING.replace(r#""M": {"generators": [[2]]}"#, r#""M": {"generators": [[1]]}"#);
    let (code, out, _) = run(&["analyze"], &whole);
    assert_eq!(code, EXIT_NOT_INVARIANT);
    let report: Value = serde_json::from_str(&out).unwrap();
    let failing: Vec<i64> = report["subspace_criterion"]["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["sigma"][0].as_i64().unwrap())
        .collect();
    assert!(failing.contains(&4));
}

#[test]
fn input_errors_exit_one() {
    let cases = [
        "{not json",
        r#"{"group": {"moduli": [0]}, "generators": []}"#,
        r#"{"group": [8], "H": {"generators": [[4]]}, "M": {"generators": [[2]]}, "generators": [{"spectrum": [1,2,3]}]}"#,
        r#"{"group": [8], "H": {"generators": [[2]]}, "M": {"generators": [[4]]}, "generators": [{"signal": [1,0,0,0,0,0,0,0]}]}"#,
        r#"{"group": [8], "H": {"generators": [[9]]}, "generators": [{"signal": [1,0,0,0,0,0,0,0]}]}"#,
        r#"{"group": [4], "generators": [{"signal": [1,0,0,0], "spectrum": [1,1,1,1]}]}"#,
    ];
    for case in cases {
        let (code, out, err) = run(&["analyze"], case);
        assert_eq!(code, EXIT_INPUT, "{case}");
        assert!(out.is_empty());
        assert!(err.starts_with("error:"), "{err}");
    }
    // analyze needs M
    let no_m = r#"{"group": [4], "generators": [{"signal": [1,0,0,0]}]}"#;
    assert_eq!(run(&["analyze"], no_m).0, EXIT_INPUT);
}

#[test]
fn zero_generator_is_invariant() {
    let zero = r#"{"group": [8], "H": {"generators": [[4]]}, "M": {"generators": [[1]]},
                   "generators": [{"signal": [0,0,0,0,0,0,0,0]}]}"#;
    let (code, out, _) = run(&["analyze"], zero);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["verdict"], true);
}

#[test]
fn invariance_set_reports() {
    let (code, out, _) = run(&["invariance-set"], RUNNING);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(elements(&report["invariance_set"]), vec![0, 2, 4, 6]);
    assert_eq!(report["index"], 2);
    assert_eq!(report["contains_H"], true);

    // S_H(delta_0) = span { delta_0, delta_4 }: nothing beyond H
    let delta = r#"{"group": [8], "H": {"generators": [[4]]}, "generators": [{"signal": [1,0,0,0,0,0,0,0]}]}"#;
    let (_, out, _) = run(&["invariance-set"], delta);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(elements(&report["invariance_set"]), vec![0, 4]);

    let spanning: Vec<String> = (0..8)
        .map(|i| {
            let v: Vec<&str> = (0..8).map(|j| if i == j { "1" } else { "0" }).collect();
            format!(r#"{{"signal": [{}]}}"#, v.join(","))
        })
        .collect();
    let all = format!(r#"{{"group": [8], "H": {{"generators": [[4]]}}, "generators": [{}]}}"#, spanning.join(","));
    let (_, out, _) = run(&["invariance-set"], &all);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(elements(&report["invariance_set"]), (0..8).collect::<Vec<_>>());
}

#[test]
fn construct_round_trips_through_invariance_set() {
    let cases = [("[[2]]", vec![0, 2, 4, 6]), ("[[1]]", (0..8).collect()), ("[[4]]", vec![0, 4])];
    let spectra = [
        [1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0; 8],
    ];
    for ((m, expected), spectrum) in cases.into_iter().zip(spectra) {
        let input = format!(r#"{{"group": [8], "H": {{"generators": [[4]]}}, "M": {{"generators": {m}}}}}"#);
        let file = ProblemFile::parse(&input).unwrap();
        let built = cmd_construct(&file).unwrap().report;
        let got: Vec<f64> = built["generators"][0]["spectrum"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v[0].as_f64().unwrap())
            .collect();
        assert_eq!(got, spectrum);
        let reparsed = ProblemFile::parse(&built.to_string()).unwrap();
        let set = cmd_invariance_set(&reparsed, 1e-9).unwrap().report;
        assert_eq!(elements(&set["invariance_set"]), expected);
        assert_eq!(cmd_analyze(&reparsed, 1e-9).unwrap().exit_code, 0);
    }
}

#[test]
fn verify_reports_agreement() {
    let (code, out, _) = run(&["verify", "--pretty"], RUNNING);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["agreement"], true);
    assert_eq!(report["verdicts"]["oracle"], true);
}

#[test]
fn reads_input_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("problem.json");
    std::fs::write(&path, RUNNING).unwrap();
    let p = path.to_str().unwrap();
    let first = run(&["analyze", "--input", p, "--tol", "1e-9"], "");
    let second = run(&["analyze", "--input", p], "");
    assert_eq!(first, second);
    assert_eq!(first.0, 0);
}
