use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn talex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_talex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&talex(&all))).unwrap()
}

fn failure(args: &[&str]) -> (i32, Value) {
    let o = talex(args);
    assert!(!o.status.success());
    let err: Value = serde_json::from_slice(&o.stderr).expect("JSON error on stderr");
    assert!(err["reason"].as_str().is_some_and(|r| !r.is_empty()));
    (o.status.code().unwrap(), err)
}

#[test]
fn alexander_from_both_inputs() {
    let pres = stdout(&talex(&["alexander", "--pres", &fixture("9_35.pres")]));
    let pd = stdout(&talex(&["alexander", "--pd", &fixture("9_35.pd")]));
    assert_eq!(pres.trim(), "7*t^2 - 13*t + 7");
    assert_eq!(pres, pd);
    assert_eq!(
        stdout(&talex(&["alexander", "--pd", &fixture("8_20.pd")])).trim(),
        "t^4 - 2*t^3 + 3*t^2 - 2*t + 1"
    );
}

#[test]
fn twisted_exact_representation() {
    let j = json(&[
        "twisted",
        "--pres",
        &fixture("3_1.pres"),
        "--rep",
        &fixture("3_1.rep.json"),
    ]);
    let text = j.to_string();
    assert!(text.contains("\"monic\":true"), "{text}");
    let plain = stdout(&talex(&[
        "twisted",
        "--pres",
        &fixture("3_1.pres"),
        "--rep",
        &fixture("3_1.rep.json"),
    ]));
    assert!(plain.starts_with("t^2 + 1"), "{plain}");
}

#[test]
fn monic_scan_over_trefoil_curve() {
    let out = stdout(&talex(&[
        "monic-scan",
        "--pres",
        &fixture("3_1.pres"),
        "--constraints",
        &fixture("3_1.constraints"),
    ]));
    assert!(out.trim_end().ends_with("6 monic of 6 samples"), "{out}");
}

#[test]
fn signature_of_trefoil() {
    let j = json(&["signature", "--seifert", &fixture("3_1.seifert")]);
    assert_eq!(j["alexander"], "t^2 - t + 1");
    assert_eq!(j["averaged"], -2.0);
    assert_eq!(j["identically_zero"], false);
}

#[test]
fn satellite_polynomials() {
    let (p, c) = (fixture("9_35.alex"), fixture("3_1.alex"));
    let run = |w: &str| {
        stdout(&talex(&[
            "satellite",
            "--pattern",
            &p,
            "--companion",
            &c,
            "--winding",
            w,
        ]))
    };
    assert_eq!(run("0").trim(), "7*t^2 - 13*t + 7");
    assert_eq!(run("1").trim(), "7*t^4 - 20*t^3 + 27*t^2 - 20*t + 7");
}

#[test]
fn pretzel_report() {
    let j = json(&["pretzel935", "--samples", "2"]);
    assert_eq!(j["censuses"]["monic"], 6);
    assert_eq!(j["censuses"]["non-genus"], 2);
    assert_eq!(j["censuses"]["C"], "identically 18");
}

#[test]
fn report_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("talex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.display().to_string();
    let out = stdout(&talex(&[
        "--json",
        "--report",
        &p,
        "alexander",
        "--pres",
        &fixture("3_1.pres"),
    ]));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_identical() {
    let args = [
        "--json",
        "--seed",
        "7",
        "genus",
        "--pres",
        &fixture("3_1.pres"),
        "--constraints",
        &fixture("3_1.constraints"),
        "--genus",
        "1",
    ];
    let first = stdout(&talex(&args));
    assert_eq!(first, stdout(&talex(&args)));
}

#[test]
fn errors_exit_nonzero_with_reason() {
    assert_eq!(
        failure(&["alexander", "--pres", "/nonexistent/knot.pres"]).0,
        13
    );
    let dir = std::env::temp_dir().join(format!("talex-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.pres");
    std::fs::write(&bad, "gens: a b\nrel: aQ\n").unwrap();
    let (code, err) = failure(&["alexander", "--pres", &bad.display().to_string()]);
    assert_eq!(code, 3);
    assert_eq!(err["error"], "parse");
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(
        failure(&["twisted", "--pres", &fixture("3_1.pres"), "--lambda", "0"]).0,
        4
    );
    assert_eq!(failure(&["alexander"]).0, 2);
}

#[test]
fn missing_subcommand_is_usage_error() {
    assert_eq!(talex(&[]).status.code(), Some(2));
}
