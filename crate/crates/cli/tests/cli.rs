use std::path::Path;
use std::process::{Command, Output};

use tclab::localring::LocalReport;
use tclab::pipeline::Certificate;
use tclab::report::AnalysisReport;

const EX14: &str = "1,2,3,4,5,6,7,8,9,10,10,10,9,8,8,5,3,3,2";
const EX25: &str = "1,2,3,4,4,3,3,3,2,2,2,1";

fn tclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tclab"))
        .args(args)
        .env_remove("TCLAB_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tclab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn analyze_bounds() {
    let text = stdout(&["analyze", "--h", EX14]);
    assert!(text.contains("4 ≤ ν(I) ≤ 11"), "{text}");
    assert!(text.contains("7 ≤ ν(I*) ≤ 11"), "{text}");
    assert!(text.contains("P(-10) ⊕ P(-12) ⊕ P^3(-15) ⊕ P(-18) ⊕ P(-19)"), "{text}");
    let r: AnalysisReport = serde_json::from_value(json(&["analyze", "--h", "1,1"])).unwrap();
    assert_eq!((r.nu_lower, r.nu_upper), (2, 2));
    let r: AnalysisReport = serde_json::from_value(json(&["analyze", "--h", EX25])).unwrap();
    assert!(r.ci_admissible);
}

#[test]
fn analyze_rejects_bad_input() {
    let out = tclab(&["analyze", "--h", "1,2,4"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("index"), "{err}");
    let out = tclab(&["analyze", "--h", "1,2,,3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("entry 3"));
}

#[test]
fn build_complete_intersection() {
    let v = json(&["build", "--h", EX25, "--schedule", r#"{"zero":[12],"negative":[[6,8],[9,11]]}"#]);
    let cert: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert_eq!(cert.local.nu, 2);
    assert_eq!(cert.local.nu_star, 4);
    assert_eq!(v["realizes"], true);
    let text = stdout(&["build", "--h", EX25, "--schedule", r#"{"zero":[12],"negative":[[6,8],[9,11]]}"#]);
    assert!(text.contains("lex matrix"));
    assert!(text.contains("schedule realized: true"));
}

#[test]
fn build_four_generated() {
    let schedule = r#"{"zero":[13,16,16,19],"negative":[[14,15],[16,18],[17,19]]}"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("schedule.json");
    std::fs::write(&path, schedule).unwrap();
    let v = json(&["build", "--h", EX14, "--schedule", path.to_str().unwrap()]);
    assert_eq!(v["certificate"]["local"]["nu"], 4);
    assert_eq!(v["certificate"]["local"]["nu_star"], 7);
    assert_eq!(v["certificate"]["pieces_match"], true);
}

#[test]
fn build_without_schedule_is_lex() {
    let v = json(&["build", "--h", "1,1"]);
    assert_eq!(v["realizes"], true);
    assert_eq!(v["construction"]["local_minors"].as_array().unwrap().len(), 2);
}

#[test]
fn build_reports_missing_slot() {
    let out = tclab(&["build", "--h", EX25, "--schedule", r#"{"zero":[12],"negative":[[6,12]]}"#]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(P(-6), P(-12))"), "{err}");
}

#[test]
fn ci_invariants() {
    let v = json(&["ci", "--c", "4,5,8,11", "--e", "6,9,13"]);
    assert_eq!(v["multiplicity"], 30);
    assert_eq!(v["a_invariant"], 11);
    assert_eq!(v["h"], serde_json::json!([1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]));
    let v = json(&["ci", "--c", "1,2", "--e", "3"]);
    assert_eq!(v["h"], serde_json::json!([1, 1]));
    let v = json(&["ci", "--c", "4,5,8,11", "--d-seq", "4,3,2,0"]);
    assert_eq!(v["e"], serde_json::json!([0, 6, 9, 13]));
    let v = json(&["ci", "--c", "4,5,8,11", "--e", "6,9,13", "--dim", "3"]);
    assert_eq!(v["series"]["dim"], 3);
    let v = json(&["ci", "--c", "4,5,8,11", "--e", "6,9,13", "--build"]);
    assert_eq!(v["build"]["certificate"]["local"]["nu"], 2);
}

#[test]
fn ci_enumerate_choices() {
    let v = json(&["ci", "--c", "4,5,8,11", "--enumerate"]);
    let es: Vec<_> = v["choices"].as_array().unwrap().iter().map(|c| c["e"].clone()).collect();
    assert_eq!(
        es,
        vec![
            serde_json::json!([0, 6, 9, 13]),
            serde_json::json!([0, 6, 10, 12]),
            serde_json::json!([0, 7, 9, 12])
        ]
    );
    assert!(!tclab(&["ci", "--c", "4,5,6", "--enumerate"]).status.success());
}

#[test]
fn enumerate_and_certify() {
    let v = json(&["enumerate", "--h", "1,2,3,2,1", "--target", "3", "--certify"]);
    let outs = v["outcomes"].as_array().unwrap();
    assert!(!outs.is_empty());
    for o in outs {
        assert_eq!(o["certificate"]["local"]["nu"], 3, "{o}");
    }
    let out = tclab(&["enumerate", "--h", EX14, "--target", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration cap"));
}

#[test]
fn verify_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gens.json");
    std::fs::write(&path, r#"{"gens": ["x^2 + y^3", "xy"]}"#).unwrap();
    let v = json(&["verify", path.to_str().unwrap()]);
    let r: LocalReport = serde_json::from_value(v).unwrap();
    assert_eq!(r.hf, vec![1, 2, 1, 1]);
    assert_eq!(r.nu, 2);
    assert_eq!(r.prime, 32003);
    let out = Command::new(env!("CARGO_BIN_EXE_tclab"))
        .args(["verify", path.to_str().unwrap(), "--json"])
        .env("TCLAB_PRIME", "101")
        .output()
        .unwrap();
    let r: LocalReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.prime, 101);
    assert!(!tclab(&["verify", path.to_str().unwrap(), "--prime", "9"]).status.success());
}

fn copy_fixtures(to: &Path) {
    let from = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), to.join(e.file_name())).unwrap();
    }
}

#[test]
fn reproduce_pinned_examples() {
    let text = stdout(&["reproduce"]);
    for case in ["ex1.4", "ex2.5", "ex2.7"] {
        assert!(text.contains(&format!("{case}: PASS")), "{text}");
    }
    let text = stdout(&["reproduce", "--case", "ex2.7"]);
    assert_eq!(text.trim(), "ex2.7: PASS");
    assert!(!tclab(&["reproduce", "--case", "ex9"]).status.success());
}

#[test]
fn reproduce_names_corrupted_case() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let path = dir.path().join("ex2.5.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("\"multiplicity\": 30", "\"multiplicity\": 31");
    std::fs::write(&path, text).unwrap();
    let out = tclab(&["reproduce", "--fixtures", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ex2.5: FAIL"), "{text}");
    assert!(text.contains("$.ci.multiplicity: expected 31, got 30"), "{text}");
    assert!(text.contains("ex1.4: PASS"), "{text}");
}

#[test]
fn bless_writes_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let out = tclab(&["reproduce", "--case", "ex2.5", "--bless", "--fixtures", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let fresh = std::fs::read_to_string(dir.path().join("ex2.5.json")).unwrap();
    let pinned = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/ex2.5.json")).unwrap();
    assert_eq!(fresh, pinned);
}
