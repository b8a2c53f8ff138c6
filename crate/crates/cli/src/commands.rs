use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tclab::cancel::{
    a_invariant, di_to_ei, ei_to_di, enumerate_cancellation_outcomes, enumerate_e_choices, h_from_sequences,
    multiplicity, series_from_sequences, BettiTable, CISequences, EnumerationLimits, HilbertSeries, Outcome, Schedule,
};
use tclab::localring::{certify as certify_local, LocalPresentation, LocalReport, PresentationJson};
use tclab::oseq::OSequence;
use tclab::pipeline::{ci_schedule, certify, certify_batch, construct, Certificate, ConstructionJson};
use tclab::poly::MatrixJson;
use tclab::report::AnalysisReport;

use crate::args::{parse_h, parse_list, RunConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOutput {
    pub construction: ConstructionJson,
    pub certificate: Certificate,
    pub realizes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiOutput {
    pub c: Vec<u32>,
    pub e: Vec<u32>,
    pub d: Vec<u32>,
    pub h: OSequence,
    pub series: HilbertSeries,
    /// Leading coefficients of the series; for `dim = 2` this is all of it.
    pub expansion: Vec<i64>,
    pub multiplicity: u64,
    pub a_invariant: i64,
    pub star_table: BettiTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildOutput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiChoice {
    pub e: Vec<u32>,
    pub h: OSequence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiEnumeration {
    pub c: Vec<u32>,
    pub choices: Vec<CiChoice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedOutcome {
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationOutput {
    pub h: OSequence,
    pub target: u32,
    pub outcomes: Vec<EnumeratedOutcome>,
}

pub fn analyze(h: &str) -> Result<AnalysisReport> {
    Ok(AnalysisReport::new(&parse_h(h)?))
}

pub fn read_schedule(arg: Option<&str>) -> Result<Schedule> {
    let Some(arg) = arg else { return Ok(Schedule::default()) };
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading schedule {arg}"))?
    };
    serde_json::from_str(&text).context("parsing schedule JSON")
}

pub fn build(h: &OSequence, schedule: &Schedule, cfg: &RunConfig) -> Result<BuildOutput> {
    let c = construct(h, schedule, cfg.field).with_context(|| format!("applying schedule {}", schedule_text(schedule)))?;
    let certificate = certify(&c, cfg.cap).context("certifying the perturbed minors")?;
    Ok(BuildOutput {
        realizes: certificate.realizes(&c),
        construction: ConstructionJson::from(&c),
        certificate,
    })
}

pub fn ci(c: &str, e: Option<&str>, d_seq: Option<&str>, dim: u32, with_build: bool, cfg: &RunConfig) -> Result<CiOutput> {
    let c = parse_list(c)?;
    let seqs = match (e, d_seq) {
        (Some(e), None) => {
            let e = parse_list(e)?;
            if e.len() + 1 == c.len() {
                CISequences::from_tail(c.clone(), &e)?
            } else {
                CISequences::new(c.clone(), e)?
            }
        }
        (None, Some(d)) => {
            let e = di_to_ei(&c, &parse_list(d)?)?;
            CISequences::new(c.clone(), e)?
        }
        _ => bail!("give exactly one of --e and --d-seq, or use --enumerate"),
    };
    let h = h_from_sequences(&seqs)?;
    let series = series_from_sequences(&seqs, dim)?;
    let a = a_invariant(&seqs, dim)?;
    let len = match series.polynomial() {
        Some(p) => p.len(),
        None => (a.max(0) as usize) + 4,
    };
    let build = if with_build {
        let (h, schedule) = ci_schedule(&seqs)?;
        Some(build(&h, &schedule, cfg)?)
    } else {
        None
    };
    Ok(CiOutput {
        d: ei_to_di(seqs.c(), seqs.e())?,
        c: seqs.c().to_vec(),
        e: seqs.e().to_vec(),
        h,
        expansion: series.expansion(len),
        series,
        multiplicity: multiplicity(&seqs),
        a_invariant: a,
        star_table: seqs.star_table(),
        build,
    })
}

pub fn ci_enumerate(c: &str) -> Result<CiEnumeration> {
    let c = parse_list(c)?;
    let choices = enumerate_e_choices(&c);
    if choices.is_empty() {
        bail!("no admissible e for c = {c:?}");
    }
    let choices = choices
        .into_iter()
        .map(|e| {
            let seqs = CISequences::new(c.clone(), e)?;
            Ok(CiChoice {
                h: h_from_sequences(&seqs)?,
                e: seqs.e().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CiEnumeration { c, choices })
}

pub fn enumerate(h: &str, target: u32, with_certify: bool, cfg: &RunConfig) -> Result<EnumerationOutput> {
    let h = parse_h(h)?;
    let limits = EnumerationLimits { max_order: cfg.max_order };
    let outcomes = enumerate_cancellation_outcomes(&h, target, limits)?;
    let certs: Vec<Option<Result<Certificate>>> = if with_certify {
        let builds: Vec<_> = outcomes
            .iter()
            .map(|o| construct(&h, &o.schedule, cfg.field))
            .collect::<Result<_, _>>()?;
        certify_batch(&builds, cfg.cap)
            .into_iter()
            .map(|r| Some(r.map_err(anyhow::Error::from)))
            .collect()
    } else {
        outcomes.iter().map(|_| None).collect()
    };
    let outcomes = outcomes
        .into_iter()
        .zip(certs)
        .map(|(outcome, cert)| {
            let (certificate, error) = match cert {
                Some(Ok(c)) => (Some(c), None),
                Some(Err(e)) => (None, Some(e.to_string())),
                None => (None, None),
            };
            EnumeratedOutcome {
                outcome,
                certificate,
                error,
            }
        })
        .collect();
    Ok(EnumerationOutput { h, target, outcomes })
}

pub fn verify(json: &PresentationJson, cfg: &RunConfig) -> Result<LocalReport> {
    let mut pres = LocalPresentation::from_json(json, cfg.field)?;
    if let Some(n) = json.truncation {
        pres = pres.with_truncation(n);
    }
    Ok(certify_local(&pres, cfg.cap)?.0)
}

pub fn schedule_text(s: &Schedule) -> String {
    let parts: Vec<String> = s.cancellations().map(|c| c.to_string()).collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(", ")
    }
}

fn table_text(t: &BettiTable) -> String {
    format!("generators {}\n  syzygies   {}", t.format_gens(), t.format_syz())
}

fn matrix_text(name: &str, m: &MatrixJson) -> String {
    let mut out = format!("{name} (rows {:?}, columns {:?})\n", m.row_degrees, m.col_degrees);
    for row in &m.entries {
        let _ = writeln!(out, "  [ {} ]", row.join(" | "));
    }
    out
}

fn report_text(r: &LocalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  HF = {:?}  (p = {}, N = {})", r.hf, r.prime, r.truncation);
    let _ = writeln!(out, "  ν(I) = {}, ν(I*) = {}", r.nu, r.nu_star);
    let _ = writeln!(out, "  I*: {}", table_text(&r.star_table()).replace('\n', "\n  "));
    let _ = write!(out, "  I* generators: {}", r.star_gens.join(", "));
    out
}

pub fn build_text(b: &BuildOutput) -> String {
    let c = &b.construction;
    let mut out = String::new();
    let _ = writeln!(out, "h = {}", c.h);
    let _ = writeln!(out, "schedule: {}", schedule_text(&c.schedule));
    let _ = writeln!(out, "lex table:\n  {}", table_text(&c.ek));
    let _ = writeln!(out, "predicted I*:\n  {}", table_text(&c.predicted_star));
    let _ = writeln!(out, "predicted I:\n  {}", table_text(&c.predicted_local));
    out.push_str(&matrix_text("lex matrix", &c.lex_matrix));
    out.push_str(&matrix_text("I* matrix", &c.star_matrix));
    out.push_str(&matrix_text("I matrix", &c.local_matrix));
    let _ = writeln!(out, "I* minors: {}", c.star_minors.join(", "));
    let _ = writeln!(out, "I minors: {}", c.local_minors.join(", "));
    let _ = writeln!(out, "certified I:\n{}", report_text(&b.certificate.local));
    let _ = writeln!(out, "HF of P/I* from its certified generators: {:?}", b.certificate.star_hf);
    let _ = writeln!(out, "leading pieces equal the I* minors' ideal: {}", b.certificate.pieces_match);
    let _ = write!(out, "schedule realized: {}", b.realizes);
    out
}

pub fn ci_text(o: &CiOutput) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c = {:?}, e = {:?}, d = {:?}", o.c, o.e, o.d);
    let _ = writeln!(out, "h = {}", o.h);
    let _ = writeln!(out, "Hilbert series numerator {:?} over (1 - t)^{}", o.series.numerator, o.series.dim);
    let _ = writeln!(out, "series coefficients: {:?}", o.expansion);
    let _ = writeln!(out, "multiplicity e(G) = {}, a-invariant a(G) = {}", o.multiplicity, o.a_invariant);
    let _ = write!(out, "I* table:\n  {}", table_text(&o.star_table));
    if let Some(b) = &o.build {
        let _ = write!(out, "\n\n{}", build_text(b));
    }
    out
}

pub fn ci_enumeration_text(o: &CiEnumeration) -> String {
    let mut out = format!("c = {:?}: {} choices of e", o.c, o.choices.len());
    for ch in &o.choices {
        let _ = write!(out, "\n  e = {:?}  h = {}", ch.e, ch.h);
    }
    out
}

pub fn enumeration_text(o: &EnumerationOutput) -> String {
    let mut out = format!("h = {}: {} schedules reach {} generators", o.h, o.outcomes.len(), o.target);
    for e in &o.outcomes {
        let oc = &e.outcome;
        let _ = write!(out, "\n- ν(I*) = {}: {}", oc.nu_star, schedule_text(&oc.schedule));
        let _ = write!(out, "\n    I*: {}", oc.star.format_gens());
        if let Some(c) = &e.certificate {
            let _ = write!(
                out,
                "\n    certified: HF {:?}, ν(I) = {}, ν(I*) = {}",
                c.local.hf, c.local.nu, c.local.nu_star
            );
        }
        if let Some(err) = &e.error {
            let _ = write!(out, "\n    certification failed: {err}");
        }
    }
    out
}

pub fn verify_text(r: &LocalReport) -> String {
    report_text(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tclab::poly::PrimeField;

    fn cfg() -> RunConfig {
        RunConfig {
            field: PrimeField::default(),
            cap: 128,
            max_order: 8,
            json: true,
        }
    }

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(v: &T) {
        let text = serde_json::to_string(v).unwrap();
        assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), v);
    }

    #[test]
    fn outputs_round_trip() {
        let c = ci("4,5,8,11", Some("6,9,13"), None, 2, true, &cfg()).unwrap();
        round_trip(&c);
        round_trip(c.build.as_ref().unwrap());
        round_trip(&ci_enumerate("4,5,8,11").unwrap());
        round_trip(&enumerate("1,2,2,1", 2, true, &cfg()).unwrap());
        round_trip(&analyze("1,2,3,2,1").unwrap());
    }

    #[test]
    fn d_sequence_matches_e() {
        let a = ci("4,5,8,11", Some("0,6,9,13"), None, 2, false, &cfg()).unwrap();
        let b = ci("4,5,8,11", None, Some(&format!("{:?}", a.d)), 2, false, &cfg()).unwrap();
        assert_eq!(a, b);
        assert!(ci("4,5,8,11", None, None, 2, false, &cfg()).is_err());
    }

    #[test]
    fn schedule_errors_name_the_cancellation() {
        let h = tclab::oseq::OSequence::from_values(&[1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]).unwrap();
        let s = read_schedule(Some(r#"{"zero":[7]}"#)).unwrap();
        let err = format!("{:#}", build(&h, &s, &cfg()).unwrap_err());
        assert!(err.contains("(P(-7), P(-7))"), "{err}");
    }
}
