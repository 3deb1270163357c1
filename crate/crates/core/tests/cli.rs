use std::process::{Command, Output};

use tricubic::cli::ReportEnvelope;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricubic")).args(args).output().expect("binary runs")
}

fn envelope(args: &[&str]) -> ReportEnvelope {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    ReportEnvelope::from_json(std::str::from_utf8(&out.stdout).unwrap().trim()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--json", "analyze", "3", "2", "0", "6"]).status.code(), Some(0));
    assert_eq!(run(&["analyze", "3", "2"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "3", "2", "x", "6"]).status.code(), Some(2));
    assert_eq!(run(&["local", "0", "0", "0", "5", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(run(&["search", "0", "0", "0", "5", "--box", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["tetra", "--n-range", "3", "1"]).status.code(), Some(2));
    // no rational root of f1
    assert_eq!(run(&["bundle", "19", "8", "5"]).status.code(), Some(2));
    assert_eq!(run(&["bundle", "21", "0", "50", "--root", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verdict_strings() {
    assert_eq!(envelope(&["--json", "analyze", "0", "0", "0", "4"]).verdict, "LocallyInsoluble");
    assert_eq!(envelope(&["--json", "analyze", "0", "0", "0", "3"]).verdict, "SumOfCubesExternal");
    assert_eq!(envelope(&["--json", "analyze", "3", "2", "0", "12"]).verdict, "NoObstruction");
    assert_eq!(envelope(&["--json", "analyze", "3", "2", "0", "6"]).verdict, "IntegralPointKnown");
    assert_eq!(envelope(&["--json", "tetra", "2"]).verdict, "Reproduced");
    assert_eq!(envelope(&["--json", "bundle", "21", "0", "50"]).verdict, "Generators(1)");
    assert_eq!(envelope(&["--json", "local", "0", "0", "0", "5", "--prime", "3"]).verdict, "Insoluble");
    assert_eq!(envelope(&["--json", "local", "3", "2", "0", "12"]).verdict, "Soluble");
}

#[test]
fn search_and_exceptional_examples() {
    let search = envelope(&["--json", "search", "3", "2", "0", "6", "--box", "5"]);
    let points = search.result["points"].as_array().unwrap();
    assert!(points.contains(&serde_json::json!([1, 0, 0])));
    let ex = envelope(&["--json", "exceptional", "-1", "0", "--bound", "1000"]);
    assert_eq!(ex.result["delta1_square_n"], serde_json::json!([0]));
    assert_eq!(ex.result["delta2_square_n"], serde_json::json!([]));
}

#[test]
fn determinism_and_round_trip() {
    let args = ["--json", "analyze", "3", "2", "0", "30"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let env = ReportEnvelope::from_json(std::str::from_utf8(&a).unwrap().trim()).unwrap();
    assert_eq!(env.to_json().as_bytes(), a.trim_ascii_end());

    let batch = ["--json", "analyze", "3", "2", "0", "0", "--n-range", "-10", "10"];
    let first = run(&batch).stdout;
    assert_eq!(first, run(&batch).stdout);
    let lines: Vec<&str> = std::str::from_utf8(&first).unwrap().lines().collect();
    assert_eq!(lines.len(), 21);
    for (line, n) in lines.iter().zip(-10..=10) {
        let env = ReportEnvelope::from_json(line).unwrap();
        assert_eq!(env.inputs["n"], n.to_string());
    }
}

#[test]
fn rationals_render_as_strings() {
    let env = envelope(&["--json", "u50"]);
    assert_eq!(env.verdict, "Failed(parameter_cross_check)");
    let scan = &env.result["certificates"]["real_scan"];
    assert_eq!(scan["per_sample"][1]["parameter"], "-11/8");
    assert_eq!(env.result["certificates"]["class"]["symbols"][1]["tau"], "-2");
    assert_eq!(env.result["certificates"]["class"]["symbols"][1]["a"], -6);
}

#[test]
fn text_mode() {
    let out = run(&["tetra", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: Reproduced"), "{text}");
}
