//! The pinned worked examples. Each case recomputes everything from scratch
//! with the default field, checks the example's own claims, and compares the
//! full output against `fixtures/<case>.json`.

use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use tclab::cancel::{BettiTable, Cancellation, Schedule};
use tclab::lexseg::lex_ideal;
use tclab::localring::{LocalReport, PresentationJson, DEFAULT_TRUNCATION_CAP};
use tclab::oseq::OSequence;
use tclab::poly::PrimeField;
use tclab::report::AnalysisReport;

use crate::args::RunConfig;
use crate::commands::{build, ci, ci_enumerate, verify};

pub const CASES: [&str; 3] = ["ex1.4", "ex2.5", "ex2.7"];

const EX14_STAR: [&str; 7] = [
    "x^10 - 2x^8y^2 - x^6y^4 + 4x^4y^6 - 2x^2y^8",
    "-x^9y^3 + x^7y^5 + 2x^5y^7 - 2x^3y^9",
    "-x^7y^8 + x^5y^10 + x^3y^12 - xy^14",
    "x^6y^9 - x^4y^11",
    "-x^5y^10 + x^3y^12",
    "x^2y^16",
    "y^19",
];

const EX14_LOCAL: [&str; 5] = [
    "x^10 - 2x^8y^2 - x^6y^4 + 4x^4y^6 - 2x^2y^8+x^4y^9 + x^3y^10 - x^6y^6 - x^5y^7 + x^4y^8 + x^3y^9 - x^8y^3 + x^6y^5 + x^4y^7 - x^2y^9",
    "- x^9y^3 + x^7y^5 + 2x^5y^7 - 2x^3y^9 -x^3y^12 - x^2y^13 + x^5y^9 + x^4y^10 + x^7y^6 - x^5y^8 - x^3y^10 + xy^12",
    "x^6y^9 - x^4y^11 + y^17 - x^5y^10 + x^3y^12",
    "-x^2y^15 - xy^16",
    "-x^5y^10 + x^3y^12+ y^17",
];

const EX25_LOCAL: [&str; 2] = ["xy^6 - x^3y^2 + xy^4", "-2x^2y^4 + y^6 + x^4 - x^2y^2"];

const EX27_STAR: [[&str; 4]; 2] = [
    ["x^4 - x^2y^2", "-x^3y^2 + xy^4", "x^2y^6", "y^11"],
    ["x^4 - x^2y^2", "-x^3y^2", "-xy^7", "y^11"],
];

const EX27_LOCAL: [[&str; 2]; 2] = [
    ["xy^5 - x^3y^2 + xy^4", "y^7 - x^2y^4 - x^2y^3 + x^4 - x^2y^2"],
    ["xy^6 + xy^5 - x^3y^2", "-x^2y^4 + y^6 - x^2y^3 + x^4 - x^2y^2"],
];

pub struct CaseRun {
    pub output: Value,
    /// The example's own claims, checked on the fresh output.
    pub checks: Vec<(String, bool)>,
}

fn pinned() -> RunConfig {
    RunConfig {
        field: PrimeField::default(),
        cap: DEFAULT_TRUNCATION_CAP,
        max_order: 8,
        json: true,
    }
}

fn printed(gens: &[&str]) -> Result<LocalReport> {
    let json = PresentationJson {
        gens: gens.iter().map(|s| s.to_string()).collect(),
        truncation: None,
        prime: None,
    };
    verify(&json, &pinned())
}

fn table(gens: &[u32], syz: &[u32]) -> BettiTable {
    BettiTable::from_degrees(gens, syz).expect("balanced table")
}

fn ex14() -> Result<CaseRun> {
    let cfg = pinned();
    let h = OSequence::from_values(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 9, 8, 8, 5, 3, 3, 2])?;
    let analysis = AnalysisReport::new(&h);
    let text = analysis.to_string();
    let schedule = Schedule {
        zero: vec![13, 16, 16, 19],
        negative: vec![Cancellation::new(14, 15)?, Cancellation::new(16, 18)?, Cancellation::new(17, 19)?],
    };
    let b = build(&h, &schedule, &cfg)?;
    let star = printed(&EX14_STAR)?;
    let local = printed(&EX14_LOCAL)?;
    let minimal = table(&[10, 12, 15, 15, 15, 18, 19], &[14, 16, 17, 17, 20, 20]);
    let checks = vec![
        ("4 ≤ ν(I) ≤ 11".into(), text.contains("4 ≤ ν(I) ≤ 11")),
        ("7 ≤ ν(I*) ≤ 11".into(), text.contains("7 ≤ ν(I*) ≤ 11")),
        ("minimal I* table".into(), analysis.min_star_table == minimal),
        ("construction realizes h".into(), b.realizes && b.certificate.hf_matches(&h)),
        ("constructed ν(I) = 4".into(), b.certificate.local.nu == 4),
        ("constructed ν(I*) = 7".into(), b.certificate.local.nu_star == 7),
        ("printed I* has HF h".into(), star.hf == h.values()),
        ("printed I* has the minimal table".into(), star.star_table() == minimal),
    ];
    Ok(CaseRun {
        output: json!({
            "analysis": analysis,
            "build": b,
            "printed_star": star,
            "printed_local": local,
        }),
        checks,
    })
}

fn ex25() -> Result<CaseRun> {
    let cfg = pinned();
    let out = ci("4,5,8,11", Some("6,9,13"), None, 2, true, &cfg)?;
    let lex = lex_ideal(&out.h);
    let local = printed(&EX25_LOCAL)?;
    let b = out.build.as_ref().expect("requested");
    let star = table(&[4, 5, 8, 11], &[6, 9, 13]);
    let checks = vec![
        ("h".into(), out.h.values() == [1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]),
        ("e(G) = 30".into(), out.multiplicity == 30),
        ("a(G) = 11".into(), out.a_invariant == 11),
        ("lex generators".into(), lex.gens() == [(4, 0), (3, 2), (2, 6), (1, 10), (0, 12)]),
        ("construction realizes h".into(), b.realizes),
        ("constructed ν(I) = 2".into(), b.certificate.local.nu == 2),
        ("constructed I* table".into(), b.certificate.local.star_table() == star),
        ("printed I has HF h".into(), local.hf == out.h.values()),
        ("printed ν(I) = 2".into(), local.nu == 2),
        ("printed I* table".into(), local.star_table() == star),
    ];
    Ok(CaseRun {
        output: json!({ "ci": out, "lex": lex, "printed_local": local }),
        checks,
    })
}

fn ex27() -> Result<CaseRun> {
    let cfg = pinned();
    let choices = ci_enumerate("4,5,8,11")?;
    let mut builds = Vec::new();
    for ch in &choices.choices {
        let e: Vec<String> = ch.e[1..].iter().map(|v| v.to_string()).collect();
        builds.push(ci("4,5,8,11", Some(&e.join(",")), None, 2, true, &cfg)?);
    }
    let stars = EX27_STAR.iter().map(|g| printed(g)).collect::<Result<Vec<_>>>()?;
    let locals = EX27_LOCAL.iter().map(|g| printed(g)).collect::<Result<Vec<_>>>()?;
    let es: Vec<Vec<u32>> = choices.choices.iter().map(|c| c.e.clone()).collect();
    let mut checks = vec![(
        "three e-choices".into(),
        es == [vec![0, 6, 9, 13], vec![0, 6, 10, 12], vec![0, 7, 9, 12]],
    )];
    for b in &builds {
        let r = b.build.as_ref().expect("requested");
        checks.push((format!("e = {:?} realized with ν(I) = 2", b.e), r.realizes && r.certificate.local.nu == 2));
    }
    for (k, (star, syz)) in stars.iter().zip([[6, 10, 12], [7, 9, 12]]).enumerate() {
        checks.push((
            format!("printed I* of ({}) has table {:?}", k + 2, syz),
            star.star_table() == table(&[4, 5, 8, 11], &syz),
        ));
        checks.push((format!("printed I* of ({}) has the CI Hilbert function", k + 2), star.hf == builds[k + 1].h.values()));
    }
    for (k, local) in locals.iter().enumerate() {
        let ok = local.hf == builds[k + 1].h.values() && local.nu == 2 && local.star_table() == stars[k].star_table();
        checks.push((format!("printed I of ({}) is a complete intersection with that I*", k + 2), ok));
    }
    Ok(CaseRun {
        output: json!({
            "choices": choices,
            "builds": builds,
            "printed_star": stars,
            "printed_local": locals,
        }),
        checks,
    })
}

pub fn run_case(name: &str) -> Result<CaseRun> {
    match name {
        "ex1.4" => ex14(),
        "ex2.5" => ex25(),
        "ex2.7" => ex27(),
        _ => anyhow::bail!("unknown case {name:?}; known cases: {}", CASES.join(", ")),
    }
}

/// Paths where `expected` and `actual` differ, at most `limit` of them.
pub fn json_diff(expected: &Value, actual: &Value, limit: usize) -> Vec<String> {
    fn walk(path: &str, a: &Value, b: &Value, out: &mut Vec<String>, limit: usize) {
        if out.len() >= limit || a == b {
            return;
        }
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
                keys.sort();
                keys.dedup();
                for k in keys {
                    let p = format!("{path}.{k}");
                    match (x.get(k), y.get(k)) {
                        (Some(u), Some(v)) => walk(&p, u, v, out, limit),
                        (Some(_), None) => out.push(format!("{p}: missing from output")),
                        (None, Some(_)) => out.push(format!("{p}: not in fixture")),
                        (None, None) => unreachable!(),
                    }
                }
            }
            (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
                for (i, (u, v)) in x.iter().zip(y).enumerate() {
                    walk(&format!("{path}[{i}]"), u, v, out, limit);
                }
            }
            _ => out.push(format!("{path}: expected {a}, got {b}")),
        }
    }
    let mut out = Vec::new();
    walk("$", expected, actual, &mut out, limit);
    out
}

pub struct CaseResult {
    pub name: String,
    pub failures: Vec<String>,
    pub blessed: bool,
}

pub fn reproduce(cases: &[&str], fixtures: &Path, bless: bool) -> Vec<CaseResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|&name| s.spawn(move || check_case(name, fixtures, bless)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("case thread panicked")).collect()
    })
}

fn check_case(name: &str, fixtures: &Path, bless: bool) -> CaseResult {
    let mut failures = Vec::new();
    let mut blessed = false;
    match run_case(name) {
        Err(e) => failures.push(format!("error: {e:#}")),
        Ok(run) => {
            for (claim, ok) in &run.checks {
                if !ok {
                    failures.push(format!("claim failed: {claim}"));
                }
            }
            let path = fixtures.join(format!("{name}.json"));
            if bless {
                if failures.is_empty() {
                    match write_fixture(&path, &run.output) {
                        Ok(()) => blessed = true,
                        Err(e) => failures.push(format!("{e:#}")),
                    }
                }
            } else {
                match read_fixture(&path) {
                    Ok(expected) => failures.extend(json_diff(&expected, &run.output, 10)),
                    Err(e) => failures.push(format!("{e:#}")),
                }
            }
        }
    }
    CaseResult {
        name: name.to_string(),
        failures,
        blessed,
    }
}

fn read_fixture(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading fixture {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing fixture {}", path.display()))
}

fn write_fixture(path: &Path, v: &Value) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing fixture {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_names_paths() {
        let a = json!({"x": [1, 2], "y": {"z": 3}});
        let b = json!({"x": [1, 5], "y": {"z": 3, "w": 0}});
        assert_eq!(
            json_diff(&a, &b, 10),
            vec!["$.x[1]: expected 2, got 5".to_string(), "$.y.w: not in fixture".to_string()]
        );
        assert!(json_diff(&a, &a, 10).is_empty());
    }
}
