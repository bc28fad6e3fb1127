use std::path::PathBuf;

use wflineage::cli::{exit, run, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn wf(args: &[&str]) -> Output {
    run(std::iter::once("wflineage").chain(args.iter().copied()))
}

const NORMALIZE_FILTER: &str = "normalize_filter.wf";
const SPANNING_DERIVED: &str = "spanning_derived.wf";
const GENERATE_SAMPLE: &str = "generate_sample.wf";

#[test]
fn validate_reports_verdicts() {
    let ok = wf(&["validate", &fixture(NORMALIZE_FILTER)]);
    assert_eq!((ok.code, ok.stdout.as_str()), (exit::OK, "consistent\n"));

    let bad = wf(&["validate", &fixture(GENERATE_SAMPLE)]);
    assert_eq!(bad.code, exit::FAILED);
    assert!(
        bad.stdout.contains("(x_in, x_out) asserted DerivedFrom"),
        "{}",
        bad.stdout
    );
    assert!(bad.stdout.contains("path [x_in, x_a, x_b, x_out] has type DependsOn"));

    let missing = wf(&["validate", "/nonexistent/spec.wf"]);
    assert_eq!(missing.code, exit::INPUT_ERROR);
    assert!(missing.stdout.is_empty());
    assert!(missing.stderr.starts_with("error: cannot read"));
}

#[test]
fn parse_errors_go_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.wf");
    std::fs::write(
        &path,
        "workflow w\nprogram p\n  in a from d\n  out b to e\ndep a -> b : Sameas\n",
    )
    .unwrap();
    let out = wf(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, exit::INPUT_ERROR);
    assert!(
        out.stderr.contains("unknown dependency type 'Sameas'"),
        "{}",
        out.stderr
    );
    assert!(out.stderr.contains("bad.wf:5:14"), "{}", out.stderr);
}

#[test]
fn infer_text_and_json() {
    let text = wf(&["infer", &fixture(NORMALIZE_FILTER)]);
    assert_eq!(text.code, exit::OK);
    assert!(text
        .stdout
        .lines()
        .any(|l| l.starts_with("(x1, x4)") && l.ends_with("DerivedFrom (inferred)")));

    let json = wf(&["infer", "--format", "json", &fixture(SPANNING_DERIVED)]);
    let value: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(value["x1 -> x4"], serde_json::json!({ "entailed": "DerivedFrom" }));
    assert_eq!(
        value["x1 -> x2"],
        serde_json::json!({ "options": ["DerivedFrom", "ValueOf", "SameAs"] })
    );
    assert_eq!(
        json.stdout,
        wf(&["infer", "--format", "json", &fixture(SPANNING_DERIVED)]).stdout
    );

    let inconsistent = wf(&["infer", &fixture(GENERATE_SAMPLE)]);
    assert_eq!(inconsistent.code, exit::FAILED);
}

#[test]
fn infer_unannotated_lists_all_options() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.wf");
    std::fs::write(&path, "workflow bare\nprogram p\n  in a from d\n  out b to e\n").unwrap();
    let out = wf(&["infer", path.to_str().unwrap()]);
    assert_eq!(out.code, exit::OK);
    assert_eq!(
        out.stdout,
        "(a, b)  one of {FlowsFrom, DependsOn, DerivedFrom, ValueOf, SameAs}\n"
    );
}

#[test]
fn solve_counts_and_truncates() {
    let all = wf(&["solve", &fixture(SPANNING_DERIVED)]);
    assert_eq!(all.code, exit::OK);
    assert!(all.stdout.starts_with("5 answer set(s)\n"));
    assert_eq!(all.stdout.matches("\nanswer set ").count(), 5);

    let capped = wf(&["solve", "--max-models", "2", &fixture(SPANNING_DERIVED)]);
    assert_eq!(capped.stdout.matches("\nanswer set ").count(), 2);
    assert!(capped.stdout.contains("more exist"));

    let json: serde_json::Value = serde_json::from_str(
        &wf(&[
            "solve",
            "--max-models",
            "2",
            "--format",
            "json",
            &fixture(SPANNING_DERIVED),
        ])
        .stdout,
    )
    .unwrap();
    assert_eq!(json["count"], 2);
    assert_eq!(json["truncated"], true);

    let none = wf(&["solve", &fixture(GENERATE_SAMPLE)]);
    assert_eq!(none.code, exit::FAILED);
    assert!(none.stdout.starts_with("0 answer sets (inconsistent)"));
}

#[test]
fn usage_errors() {
    assert_eq!(
        wf(&["solve", "--max-models", "0", &fixture(SPANNING_DERIVED)]).code,
        exit::USAGE
    );
    assert_eq!(wf(&["frobnicate"]).code, exit::USAGE);
    assert_eq!(wf(&["export", &fixture(NORMALIZE_FILTER)]).code, exit::USAGE);
    let help = wf(&["--help"]);
    assert_eq!(help.code, exit::OK);
    assert!(help.stdout.contains("check-trace"));
}

#[test]
fn export_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let asp = dir.path().join("g.lp");
    let out = wf(&[
        "export",
        "--dot",
        dot.to_str().unwrap(),
        "--asp",
        asp.to_str().unwrap(),
        &fixture(NORMALIZE_FILTER),
    ]);
    assert_eq!(out.code, exit::OK, "{}", out.stderr);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.contains("style=dashed, color=red"));
    assert!(dot.contains("style=dotted, color=blue"));
    let asp = std::fs::read_to_string(asp).unwrap();
    assert!(asp.contains(wflineage::dsl::CHOICE_RULE));
}

#[test]
fn export_asp_rejects_not_flows_from() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("n.wf");
    std::fs::write(
        &spec,
        "workflow n\nprogram p\n  in a from d\n  out b to e\nprogram q\n  in c from f\n  out g to h\ndep a -> g : NotFlowsFrom\n",
    )
    .unwrap();
    let target = dir.path().join("n.lp");
    let out = wf(&["export", "--asp", target.to_str().unwrap(), spec.to_str().unwrap()]);
    assert_eq!(out.code, exit::INPUT_ERROR);
    assert!(out.stderr.contains("NotFlowsFrom"));
    assert!(!target.exists());
    // The graph export has no such restriction.
    let dot = dir.path().join("n.dot");
    assert_eq!(
        wf(&["export", "--dot", dot.to_str().unwrap(), spec.to_str().unwrap()]).code,
        exit::OK
    );
}

#[test]
fn check_trace_exit_codes() {
    let ok = wf(&[
        "check-trace",
        &fixture(NORMALIZE_FILTER),
        &fixture("normalize_filter_trace.json"),
    ]);
    assert_eq!(ok.code, exit::OK, "{}{}", ok.stdout, ok.stderr);
    assert!(ok.stdout.ends_with("0 violation(s) in 2 invocation(s)\n"));

    let bad = wf(&[
        "check-trace",
        &fixture(NORMALIZE_FILTER),
        &fixture("normalize_filter_trace_violating.json"),
    ]);
    assert_eq!(bad.code, exit::FAILED);
    assert!(bad.stdout.contains("identity-violation on (x3, x4) SameAs"));

    let dir = tempfile::tempdir().unwrap();
    let unknown = dir.path().join("t.json");
    std::fs::write(
        &unknown,
        r#"{"workflow": "normalize_filter", "invocations": [{"block": "filter", "reads": {"x9": []}, "writes": {}}]}"#,
    )
    .unwrap();
    let out = wf(&["check-trace", &fixture(NORMALIZE_FILTER), unknown.to_str().unwrap()]);
    assert_eq!(out.code, exit::INPUT_ERROR);
    assert!(out.stderr.contains("unknown edge label 'x9'"), "{}", out.stderr);

    std::fs::write(&unknown, "{not json").unwrap();
    assert_eq!(
        wf(&["check-trace", &fixture(NORMALIZE_FILTER), unknown.to_str().unwrap()]).code,
        exit::INPUT_ERROR
    );
}

#[test]
fn binary_exit_code() {
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_wflineage"))
        .args(["validate", &fixture(GENERATE_SAMPLE)])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(exit::FAILED));
    assert!(String::from_utf8_lossy(&status.stdout).contains("not-a-valid-path-type"));
}
