use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("atlas-cli-{}", std::process::id()));
    fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn gen_two_focal_is_one_line() {
    let o = atlas(&["gen", "--family", "focals234", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with('#') && lines[0].contains("census 6:1"));
    assert!(lines[1].contains("p1_1*p2_1"));
}

#[test]
fn gen_json_census() {
    let o = atlas(&["gen", "--family", "gaqp", "--m", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["census"],
        serde_json::json!({"3": 6, "4": 2, "5": 9, "6": 7})
    );
    assert_eq!(v["polynomials"].as_array().unwrap().len(), 24);
}

#[test]
fn gen_writes_file() {
    let p = tmp("gm3.txt");
    let o = atlas(&[
        "gen",
        "--family",
        "gm",
        "--m",
        "3",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().count(), 1 + 9 + 3 + 27 + 18 + 30 + 27);
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(
        atlas(&["gen", "--family", "nope", "--m", "2"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(atlas(&["gen", "--frobnicate"]).status.code(), Some(64));
    assert_eq!(
        atlas(&["nf", "--poly", "/definitely/missing", "--basis", "gm-m2"])
            .status
            .code(),
        Some(65)
    );
    assert_eq!(
        atlas(&["nf", "--poly", "x", "--basis", "gm2"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        atlas(&["verify", "--suite", "census", "--limits", "bogus=1"])
            .status
            .code(),
        Some(64)
    );
    let bad = tmp("bad.json");
    fs::write(&bad, "{not json").unwrap();
    let o = atlas(&[
        "specialize",
        "--family",
        "focals234",
        "--m",
        "2",
        "--arrangement",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(65));
    assert_eq!(atlas(&["--help"]).status.code(), Some(0));
}

#[test]
fn arrange_then_specialize() {
    let p = tmp("arr.json");
    let o = atlas(&[
        "arrange",
        "--m",
        "2",
        "--seed",
        "7",
        "--format",
        "json",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["genericity"]["ultra_minor_generic"], true);
    let o = atlas(&[
        "specialize",
        "--family",
        "focals234",
        "--m",
        "2",
        "--arrangement",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("# 0 of 1"));
    // only image coordinates survive
    assert!(!s.lines().nth(1).unwrap().contains('A'));
}

#[test]
fn nf_of_member_is_zero() {
    let o = atlas(&["gen", "--family", "gm", "--m", "2"]);
    let g = stdout(&o).lines().nth(5).unwrap().to_string();
    let p = tmp("g.txt");
    fs::write(&p, g).unwrap();
    let o = atlas(&[
        "nf",
        "--poly",
        p.to_str().unwrap(),
        "--basis",
        "gm-m2",
        "--order",
        "lex:pAq",
        "--format",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zero"], true);
    assert_eq!(v["certified"], true);
}

#[test]
fn nf_of_nonmember_is_nonzero() {
    let p = tmp("q.txt");
    fs::write(&p, "p1_1*p2_1").unwrap();
    let o = atlas(&["nf", "--poly", p.to_str().unwrap(), "--basis", "gaqp-m2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "p1_1*p2_1");
}

#[test]
fn verify_is_deterministic_and_reports() {
    let rep = tmp("report.json");
    let args = [
        "verify",
        "--suite",
        "dimension",
        "--seed",
        "5",
        "--format",
        "json",
        "--report",
        rep.to_str().unwrap(),
    ];
    let a = atlas(&args);
    let b = atlas(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("millis"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["suite"], "dimension");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn verify_quotient_text() {
    let o = atlas(&["verify", "--suite", "quotient", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().skip(1).all(|l| l.starts_with("PASS ")), "{s}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("verdict Pass"));
}

#[test]
fn verify_rejects_out_of_range_m() {
    assert_eq!(
        atlas(&["verify", "--suite", "quotient", "--m", "5"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn dims_and_hilbert() {
    let o = atlas(&["dims", "--m", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Γ_Ap (2,2): cone rank 34"));
    let o = atlas(&["hilbert"]);
    assert_eq!(o.status.code(), Some(0));
    let o = atlas(&[
        "hilbert",
        "--basis",
        "gaqp-m2",
        "--max-degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // 34 variables and no generator of degree below 3
    assert_eq!(v["counts"], serde_json::json!([1, 34, 595]));
}

#[test]
fn sample_json_round_trips() {
    let o = atlas(&[
        "sample", "--m", "3", "--n", "2", "--seed", "4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let c = atlas_core::atlas_model::Correspondence::from_json(&stdout(&o)).unwrap();
    assert!(c.is_consistent());
    assert_eq!(
        atlas(&["sample", "--m", "3", "--n", "2", "--seed", "4", "--format", "json"]).stdout,
        o.stdout
    );
}
