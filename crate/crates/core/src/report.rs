//! The numerical summary of an O-sequence: differences, degree sets, every
//! bound on generator counts and the minimal leading-ideal table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cancel::{min_star_table, BettiTable};
use crate::oseq::OSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub h: OSequence,
    pub d: u32,
    pub s: u32,
    pub length: u64,
    pub p: u32,
    pub delta1: Vec<i64>,
    pub delta2: Vec<i64>,
    pub set_i: Vec<u32>,
    pub set_j: Vec<u32>,
    pub set_h: Vec<u32>,
    pub nu_lower: u32,
    pub nu_upper: u32,
    pub nu_star_lower: u32,
    pub nu_star_upper: u32,
    /// Window for `ν(I*)` when `ν(I) = 3`; absent when `p > 2`.
    pub nu3_window: Option<(u32, u32)>,
    pub ci_admissible: bool,
    pub min_star_table: BettiTable,
}

impl AnalysisReport {
    pub fn new(h: &OSequence) -> Self {
        let prof = h.diff_profile();
        Self {
            h: h.clone(),
            d: h.order(),
            s: h.socle_degree(),
            length: h.length(),
            p: prof.max_jump,
            delta1: prof.delta1.clone(),
            delta2: prof.delta2.clone(),
            set_i: prof.set_i.clone(),
            set_j: prof.set_j.clone(),
            set_h: prof.set_h.clone(),
            nu_lower: h.iarrobino_lower(),
            nu_upper: h.lex_upper(),
            nu_star_lower: h.nu_star_lower(),
            nu_star_upper: h.lex_upper(),
            nu3_window: h.nu3_window().ok(),
            ci_admissible: h.is_ci_admissible(),
            min_star_table: min_star_table(h),
        }
    }
}

fn list<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join(", ")
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h = {}", self.h)?;
        writeln!(f, "order d = {}, socle degree s = {}, length = {}", self.d, self.s, self.length)?;
        writeln!(f, "Δh  = ({})", list(&self.delta1))?;
        writeln!(f, "Δ²h = ({})", list(&self.delta2))?;
        writeln!(f, "I = {{{}}}  J = {{{}}}  H = {{{}}}", list(&self.set_i), list(&self.set_j), list(&self.set_h))?;
        writeln!(f, "maximal jump p = {}", self.p)?;
        writeln!(f, "{} ≤ ν(I) ≤ {}", self.nu_lower, self.nu_upper)?;
        writeln!(f, "{} ≤ ν(I*) ≤ {}", self.nu_star_lower, self.nu_star_upper)?;
        match self.nu3_window {
            Some((lo, hi)) => writeln!(f, "if ν(I) = 3: {lo} ≤ ν(I*) ≤ {hi}")?,
            None => writeln!(f, "ν(I) = 3 is impossible (p > 2)")?,
        }
        writeln!(f, "complete intersection admissible: {}", self.ci_admissible)?;
        writeln!(f, "minimal I* generators: {}", self.min_star_table.format_gens())?;
        write!(f, "minimal I* syzygies:   {}", self.min_star_table.format_syz())
    }
}
