use std::process::{Command, Output};

use serde_json::{json, Value};

fn realsnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realsnf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn snf_of_the_integer_example() {
    let out = realsnf(&["snf", "--ring", "Z", "--input", "[[2,4],[4,2]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["diagonals"], json!(["2", "6"]));
    assert_eq!(v["rank"], json!("2"));
    assert_eq!(v["D"]["entries"], json!([["2", "0"], ["0", "6"]]));
}

#[test]
fn snf_reads_a_file() {
    let dir = std::env::temp_dir().join(format!("realsnf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(
        &path,
        r#"{"ring": "Q[x]", "entries": [["x^2", "x"], ["x", "1"]]}"#,
    )
    .unwrap();
    let out = realsnf(&["snf", "--ring", "Q[x]", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["diagonals"], json!(["1"]));
    assert_eq!(v["rank"], json!("1"));
}

#[test]
fn pnri_reports_the_unit() {
    let out = realsnf(&["pnri", "--ring", "Zsqrt:2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out),
        json!({"pnri": true, "unit": "1+1w", "norm": "-1"})
    );

    let out = realsnf(&["pnri", "--ring", "Zsqrt:3"]);
    assert_eq!(
        stdout_json(&out),
        json!({"pnri": false, "unit": "2+1w", "norm": "1"})
    );
    let out = realsnf(&["pnri", "--ring", "Zsqrt:3", "--expect-holds"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unit_is_quadratic_only() {
    let out = realsnf(&["unit", "--ring", "Zhalf:5"]);
    assert_eq!(stdout_json(&out)["unit"], json!("0+1w"));
    let out = realsnf(&["unit", "--ring", "Z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn builtin_counterexample_fails_as_predicted() {
    let out = realsnf(&["counterexample", "--ring", "Zsqrt:3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["conclusion"], json!("TheoremFailsPnriFails"));
    assert_eq!(v["report"]["input_psd"], json!(true));
    assert_eq!(v["report"]["positive_associates"][0], Value::Null);

    let out = realsnf(&["counterexample", "--expect-holds"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fractional_spec_is_rejected() {
    let spec = r#"{"a":"1+w","b":"1","c":"1+w","d1":"1+w","e1":"7/2+2w","epsilon":"1/2"}"#;
    let out = realsnf(&["counterexample", "--ring", "Zsqrt:3", "--input", spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("epsilon"), "{}", stderr(&out));

    let out = realsnf(&[
        "counterexample",
        "--ring",
        "Zsqrt:3",
        "--input",
        r#"{"r":"4/3"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn integer_counterexample_input() {
    // a*c - b^2*e1 = 1 over Z, and the theorem holds there
    let spec = r#"{"a":"2","b":"1","c":"1","d1":"3","e1":"1","epsilon":"1"}"#;
    let out = realsnf(&["counterexample", "--ring", "Z", "--input", spec]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(
        stdout_json(&out)["report"]["conclusion"],
        json!("TheoremHolds")
    );
}

#[test]
fn psd_and_verify() {
    let out = realsnf(&[
        "psd",
        "--ring",
        "Zsqrt:3",
        "--input",
        r#"[["1+w","0"],["0","1"]]"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["witness"],
        json!({"minor_rows": ["0"], "embedding": "minus", "point": null})
    );
    let out = realsnf(&["verify", "--ring", "Z", "--input", "[[2,1],[1,2]]"]);
    let v = stdout_json(&out);
    assert_eq!(v["conclusion"], json!("TheoremHolds"));
    assert_eq!(v["snf_diagonals"], json!(["1", "3"]));
}

#[test]
fn input_errors_name_the_field() {
    let out = realsnf(&["snf", "--ring", "Z", "--input", r#"[[1,"x"]]"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("entries[0][1]"));

    let out = realsnf(&["snf", "--ring", "Z", "--input", "[[1,2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = realsnf(&["psd", "--ring", "Z", "--input", "[[1,2]]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_and_rings_are_errors() {
    assert_eq!(
        realsnf(&["snf", "--ring", "Z", "--input", "[[1]]", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        realsnf(&["pnri", "--ring", "Zsqrt:5"]).status.code(),
        Some(2)
    );
    assert_eq!(realsnf(&["pnri", "--ring", "Z[i]"]).status.code(), Some(2));
}

#[test]
fn valuation_lemma_instances() {
    let out = realsnf(&[
        "valuation-lemma",
        "--input",
        r#"{"a":"x^4+x^2","b":"x","p":"x"}"#,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(
        (v["nu_a"].clone(), v["nu_b"].clone()),
        (json!("2"), json!("1"))
    );
    assert_eq!(v["holds"], json!(true));

    let out = realsnf(&["valuation-lemma", "--input", r#"{"a":"x","b":"1","p":"x"}"#]);
    assert_eq!(out.status.code(), Some(2));

    let out = realsnf(&["valuation-lemma", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn suite_is_reproducible() {
    let args = [
        "suite", "--ring", "Zsqrt:2", "--seed", "5", "--trials", "6", "--size", "3",
    ];
    let a = realsnf(&args);
    let b = realsnf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[6]["TheoremHolds"], json!("6"));
    assert_eq!(lines[6]["breaches"], json!("0"));
}

#[test]
fn pretty_output_is_the_same_document() {
    let plain = realsnf(&["unit", "--ring", "Zsqrt:7"]);
    let pretty = realsnf(&["unit", "--ring", "Zsqrt:7", "--pretty"]);
    assert_eq!(stdout_json(&plain), stdout_json(&pretty));
    assert!(String::from_utf8_lossy(&pretty.stdout).lines().count() > 1);
}
