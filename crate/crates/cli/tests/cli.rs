use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scenario"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn gmss() -> String {
    fixture("gmss/ensemble.json").display().to_string()
}

#[test]
fn validate_gmss_is_clean() {
    let o = run(&["--format", "structured", "validate", &gmss()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["scenarios"], 3);
    assert_eq!(v["clean"], true);
    assert_eq!(v["distinct"], true);
    let verdicts = v["distinctness"].as_array().unwrap();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|p| p["verdict"] == "Distinct"));
}

#[test]
fn classify_gmss() {
    let o = run(&[
        "--format",
        "structured",
        "classify",
        &gmss(),
        "--claim",
        "demand_high",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["support"]["numerator"], "10");
    assert_eq!(v["support"]["denominator"], "17");
    assert_eq!(v["support"]["decimal"], "0.588235");
    assert_eq!(v["headline"], "Probable");
    assert_eq!(
        v["classes"],
        serde_json::json!(["Open", "5%-Possible", "Probable"])
    );
}

#[test]
fn classify_bare_support() {
    let o = run(&[
        "--format",
        "structured",
        "classify",
        "--support",
        "0.96",
        "--eps",
        "0.05",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["headline"], "95%-Certain");
    let o = run(&["classify", "--support", "1", "--eps", "0.05"]);
    assert!(stdout(&o).contains("Inevitable"));
    let o = run(&["classify", "--support", "0.5", "--eps", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_eps_override() {
    let o = run(&[
        "--format",
        "structured",
        "classify",
        &gmss(),
        "--claim",
        "demand_high",
        "--eps",
        "0.45",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(
        v["classes"],
        serde_json::json!(["Open", "45%-Possible", "Probable", "55%-Certain"])
    );
    assert_eq!(v["headline"], "55%-Certain");
}

#[test]
fn invalid_ensembles_name_the_element() {
    for (file, needle) in [
        ("invalid/weight_out_of_range.json", "1.3"),
        ("invalid/duplicate_id.json", "s1"),
        (
            "invalid/bad_literal.json",
            "scenarios[0].rules[0].antecedents[0]",
        ),
    ] {
        let o = run(&["validate", &fixture(file).display().to_string()]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(stderr(&o).contains(needle), "{file}: {}", stderr(&o));
    }
}

#[test]
fn empty_transcript_is_open() {
    let o = run(&[
        "--format",
        "structured",
        "label",
        &fixture("empty.transcript.json").display().to_string(),
        "--claim",
        "p",
        "-t",
        "5",
    ]);
    let v = json(&o);
    assert_eq!(v["headline"], "Open");
    assert_eq!(v["valuation"], 0);
}

#[test]
fn rebuttal_timeline() {
    let t = fixture("rebuttal.transcript.json").display().to_string();
    let o = run(&["--format", "structured", "timeline", &t, "--claim", "p"]);
    let v = json(&o);
    assert_eq!(v["values"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["series"][1]["headline"], "Plausible");
}

#[test]
fn strict_rejects_unverifiable_arguments() {
    let t = fixture("invalid/unverifiable.transcript.json")
        .display()
        .to_string();
    let ens = gmss();
    let base = ["label", &t, "--claim", "demand_high", "-t", "1"];
    assert!(run(&base).status.success());
    let mut strict = vec!["--strict"];
    strict.extend(base);
    let o = run(&strict);
    assert_eq!(o.status.code(), Some(2));
    strict.extend(["--ensemble", &ens, "--scenario", "s3"]);
    let o = run(&strict);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("A1"), "{}", stderr(&o));
    let o = run(&["--strict", "validate", &gmss()]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn distinct_table_and_strict_mode() {
    for (file, verdict, case) in [
        ("distinct/contents_differ.json", "Distinct", "1"),
        ("distinct/identical_low_risk.json", "NonDistinct", "2A"),
        ("distinct/identical_high_risk.json", "Distinct", "2B"),
    ] {
        let f = fixture(file).display().to_string();
        let o = run(&["--format", "structured", "distinct", &f]);
        assert!(o.status.success());
        let v = json(&o);
        assert_eq!(v["verdicts"][0]["verdict"], verdict, "{file}");
        assert_eq!(v["verdicts"][0]["case"], case, "{file}");
        let strict = run(&["--strict-distinct", "distinct", &f]);
        assert_eq!(strict.status.success(), verdict == "Distinct", "{file}");
    }
    let low = fixture("distinct/identical_low_risk.json")
        .display()
        .to_string();
    assert!(run(&["validate", &low]).status.success());
    assert_eq!(
        run(&["--strict-distinct", "validate", &low]).status.code(),
        Some(1)
    );
    let o = run(&[
        "--strict-distinct",
        "support",
        &low,
        "--claim",
        "demand_high",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("base_copy"));
}

#[test]
fn saturate_then_label_and_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let tr = dir.path().join("s1.json");
    let tr_s = tr.display().to_string();
    let o = run(&["saturate", &gmss(), "--scenario", "s1", "-o", &tr_s]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&[
        "--format",
        "structured",
        "label",
        &tr_s,
        "--claim",
        "demand_high",
        "-t",
        "3",
    ]);
    assert_eq!(json(&o)["headline"], "Accepted");

    let o = run(&[
        "--format",
        "structured",
        "timeline",
        &tr_s,
        "--claim",
        "demand_high",
        "--t-max",
        "4",
    ]);
    let tl = dir.path().join("timeline.json");
    std::fs::write(&tl, &o.stdout).unwrap();
    let tl_s = tl.display().to_string();
    for (method, expected) in [
        ("last", 1.0),
        ("mean", 1.0),
        ("mode", 1.0),
        ("trimmed:25,25", 1.0),
    ] {
        let o = run(&[
            "--format",
            "structured",
            "estimate",
            &tl_s,
            "--method",
            method,
        ]);
        assert!(o.status.success(), "{method}: {}", stderr(&o));
        assert_eq!(json(&o)["estimate"], expected, "{method}");
    }
    let o = run(&["estimate", &tl_s, "--method", "median"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn estimate_trim_variants() {
    let dir = tempfile::tempdir().unwrap();
    let tl = dir.path().join("t.json");
    std::fs::write(&tl, r#"{"claim": "p", "values": [0, 0, 1, 1, 1, 1, 0, 0]}"#).unwrap();
    let tl = tl.display().to_string();
    let get = |variant: &str| {
        let o = run(&[
            "--format",
            "structured",
            "estimate",
            &tl,
            "--method",
            "trimmed:25,25",
            "--trim-variant",
            variant,
        ]);
        json(&o)["estimate"].as_f64().unwrap()
    };
    assert_eq!(get("sorted"), 0.5);
    assert_eq!(get("positional"), 1.0);
}

#[test]
fn simulate_prop1_example() {
    let o = run(&[
        "--format",
        "structured",
        "--seed",
        "7",
        "simulate",
        "prop1",
        "--eps",
        "0.1",
        "--trials",
        "100000",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v = json(&o);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    for r in records {
        for key in ["id", "bound", "frequency", "trials", "se", "pass"] {
            assert!(r.get(key).is_some(), "{key}");
        }
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn simulate_rejects_too_few_trials() {
    let o = run(&["simulate", "prop1", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("10000"));
}

#[test]
fn simulate_rejects_models_exceeding_their_bound() {
    let o = run(&[
        "simulate", "prop1", "--eps", "0.05", "--actual", "0.1", "--trials", "10000",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_exits_one_on_a_failed_check() {
    let o = run(&[
        "simulate",
        "prop4",
        "--lengths",
        "2,4",
        "--threshold",
        "0.999",
        "--rivals",
        "mean",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn structured_output_is_byte_identical() {
    let args = [
        "--format",
        "structured",
        "--seed",
        "3",
        "simulate",
        "prop5",
        "--trials",
        "10000",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "--format",
        "structured",
        "--seed",
        "3",
        "simulate",
        "axioms",
        "--trials",
        "50",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "--format",
        "structured",
        "support",
        &gmss(),
        "--claim",
        "!demand_high",
    ];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
}

#[test]
fn simulate_prop2_on_an_ensemble_scenario() {
    let o = run(&[
        "simulate",
        "prop2",
        "--ensemble",
        &gmss(),
        "--scenario",
        "s2",
        "--exhaustive",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
}
