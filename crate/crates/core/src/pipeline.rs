//! End-to-end construction: lex ideal, zero cancellations (leading ideal),
//! negative cancellations (local ideal), then certification of the result.

use serde::{Deserialize, Serialize};

use crate::cancel::{h_from_sequences, BettiTable, CISequences, Cancellation, Schedule};
use crate::lexseg::{lex_ideal, MonomialIdeal2};
use crate::localring::{certify as certify_local, GradedSubspace, LocalPresentation, LocalReport};
use crate::oseq::OSequence;
use crate::poly::{BiPoly, HilbertBurchMatrix, MatrixJson, PrimeField};
use crate::{par, Error};

/// Matrices, minors and predicted tables for one schedule.
#[derive(Clone, Debug)]
pub struct Construction {
    pub h: OSequence,
    pub schedule: Schedule,
    pub lex: MonomialIdeal2,
    pub ek: BettiTable,
    pub predicted_star: BettiTable,
    pub predicted_local: BettiTable,
    pub lex_matrix: HilbertBurchMatrix,
    pub star_matrix: HilbertBurchMatrix,
    pub local_matrix: HilbertBurchMatrix,
    pub star_minors: Vec<BiPoly>,
    pub local_minors: Vec<BiPoly>,
}

/// Applies `schedule` to the lex matrix of `h`.
pub fn construct(h: &OSequence, schedule: &Schedule, field: PrimeField) -> Result<Construction, Error> {
    let lex = lex_ideal(h);
    let ek = lex.betti();
    let (predicted_star, predicted_local) = schedule.apply(&ek)?;
    let lex_matrix = lex.hb_matrix(field);
    let mut star_matrix = lex_matrix.clone();
    for &j in &schedule.zero {
        star_matrix = star_matrix.perturb(&Cancellation::zero(j))?;
    }
    let mut local_matrix = star_matrix.clone();
    for c in &schedule.negative {
        local_matrix = local_matrix.perturb(c)?;
    }
    let star_minors = nonzero(star_matrix.signed_minors());
    let local_minors = nonzero(local_matrix.signed_minors());
    Ok(Construction {
        h: h.clone(),
        schedule: schedule.clone(),
        lex,
        ek,
        predicted_star,
        predicted_local,
        lex_matrix,
        star_matrix,
        local_matrix,
        star_minors,
        local_minors,
    })
}

fn nonzero(v: Vec<BiPoly>) -> Vec<BiPoly> {
    v.into_iter().filter(|p| !p.is_zero()).collect()
}

/// All zero cancellations, then `(P(-e_i), P(-c_{i+1}))` for `2 <= i <= n - 1`.
pub fn ci_schedule(seqs: &CISequences) -> Result<(OSequence, Schedule), Error> {
    let h = h_from_sequences(seqs)?;
    let mut schedule = Schedule::all_zero(&h);
    let (c, e) = (seqs.c(), seqs.e());
    for i in 1..seqs.n() - 1 {
        schedule.negative.push(Cancellation::new(e[i], c[i + 1])?);
    }
    Ok((h, schedule))
}

/// What the engine certified about a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Report on the local ideal generated by the perturbed minors.
    pub local: LocalReport,
    /// Report on the homogeneous ideal of the zero-perturbed minors.
    pub homogeneous: LocalReport,
    /// Hilbert function of `P / I*` recomputed from the certified generators of `I*`.
    pub star_hf: Vec<u32>,
    /// Whether the leading ideal of `I` equals the homogeneous minors' ideal in every degree.
    pub pieces_match: bool,
}

impl Certificate {
    /// Certified Hilbert function equals the input `h`.
    pub fn hf_matches(&self, h: &OSequence) -> bool {
        self.local.hf == h.values()
    }

    /// `HF(S/I) = HF(P/I*)` and `ν(I) <= ν(I*)`.
    pub fn oracle_consistent(&self) -> bool {
        self.local.hf == self.star_hf && self.local.nu <= self.local.nu_star
    }

    /// Every prediction of the schedule holds.
    pub fn realizes(&self, c: &Construction) -> bool {
        self.hf_matches(&c.h)
            && self.pieces_match
            && self.local.nu == c.predicted_local.total0()
            && self.local.star_table() == c.predicted_star
    }
}

pub fn certify(c: &Construction, cap: u32) -> Result<Certificate, Error> {
    let (local, local_analysis) = certify_local(&LocalPresentation::new(c.local_minors.clone()), cap)?;
    let (homogeneous, hom_analysis) = certify_local(&LocalPresentation::new(c.star_minors.clone()), cap)?;
    let star_gens: Vec<BiPoly> = local_analysis.star_betti()?.1;
    let (star_report, _) = certify_local(&LocalPresentation::new(star_gens), cap)?;
    let pieces_match = pieces_equal(local_analysis.pieces(), hom_analysis.pieces());
    Ok(Certificate {
        local,
        homogeneous,
        star_hf: star_report.hf,
        pieces_match,
    })
}

fn pieces_equal(a: &GradedSubspace, b: &GradedSubspace) -> bool {
    let top = a.top_degree().max(b.top_degree());
    (0..=top).all(|j| a.dim(j) == b.dim(j) && a.basis(j) == b.basis(j))
}

/// Certifies many constructions, in parallel when enabled.
pub fn certify_batch(cs: &[Construction], cap: u32) -> Vec<Result<Certificate, Error>> {
    par::map(cs, |c| certify(c, cap))
}

/// Serializable view of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub h: OSequence,
    pub schedule: Schedule,
    pub lex: MonomialIdeal2,
    pub ek: BettiTable,
    pub predicted_star: BettiTable,
    pub predicted_local: BettiTable,
    pub lex_matrix: MatrixJson,
    pub star_matrix: MatrixJson,
    pub local_matrix: MatrixJson,
    pub star_minors: Vec<String>,
    pub local_minors: Vec<String>,
}

impl From<&Construction> for ConstructionJson {
    fn from(c: &Construction) -> Self {
        let strs = |v: &[BiPoly]| v.iter().map(|p| p.to_string()).collect();
        Self {
            h: c.h.clone(),
            schedule: c.schedule.clone(),
            lex: c.lex.clone(),
            ek: c.ek.clone(),
            predicted_star: c.predicted_star.clone(),
            predicted_local: c.predicted_local.clone(),
            lex_matrix: c.lex_matrix.to_json(),
            star_matrix: c.star_matrix.to_json(),
            local_matrix: c.local_matrix.to_json(),
            star_minors: strs(&c.star_minors),
            local_minors: strs(&c.local_minors),
        }
    }
}
