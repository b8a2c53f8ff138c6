//! O-sequences `h = (1, 2, ..., d, h_d, ..., h_s)`, their first and second
//! differences, and the numerical bounds on generator counts that follow
//! from them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OSeqError {
    #[error("not an O-sequence at index {index}: {reason}")]
    NotOSequence { index: usize, reason: String },
    #[error("maximal jump {p} exceeds 2, so no ideal with three generators has this Hilbert function")]
    JumpTooLarge { p: u32 },
}

fn not_oseq(index: usize, reason: impl Into<String>) -> OSeqError {
    OSeqError::NotOSequence {
        index,
        reason: reason.into(),
    }
}

/// A validated Hilbert function of an Artinian quotient of `k[[x, y]]`.
///
/// Trailing zeros are stripped; `values[s]` is the last nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct OSequence {
    values: Vec<u32>,
    order: u32,
}

impl OSequence {
    /// Validates a raw integer list.
    ///
    /// The list `(1)` is rejected: it is the Hilbert function of the maximal
    /// ideal itself, which has no lex segment of the required shape.
    pub fn validate(raw: &[i64]) -> Result<Self, OSeqError> {
        let end = raw.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1);
        let raw = &raw[..end];
        if raw.is_empty() {
            return Err(not_oseq(0, "empty sequence"));
        }
        if let Some(i) = raw.iter().position(|&v| v < 0) {
            return Err(not_oseq(i, "negative entry"));
        }
        if raw[0] != 1 {
            return Err(not_oseq(0, "h(0) must be 1"));
        }
        let at = |j: usize| raw.get(j).copied().unwrap_or(0);
        let mut d = 0usize;
        while at(d) == d as i64 + 1 {
            d += 1;
        }
        if at(d) > d as i64 + 1 {
            return Err(not_oseq(d, format!("h({d}) = {} exceeds {}", at(d), d + 1)));
        }
        if raw.len() == 1 {
            return Err(not_oseq(0, "h = (1) is the maximal ideal"));
        }
        for j in d + 1..raw.len() {
            if raw[j] > raw[j - 1] {
                return Err(not_oseq(j, format!("h({j}) = {} exceeds h({}) = {}", raw[j], j - 1, raw[j - 1])));
            }
        }
        if let Some(j) = raw.iter().position(|&v| v == 0) {
            return Err(not_oseq(j, "zero before the socle degree"));
        }
        let values = raw
            .iter()
            .map(|&v| u32::try_from(v).map_err(|_| not_oseq(0, "entry too large")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            values,
            order: d as u32,
        })
    }

    pub fn from_values(values: &[u32]) -> Result<Self, OSeqError> {
        Self::validate(&values.iter().map(|&v| v as i64).collect::<Vec<_>>())
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `h(j)`, zero beyond the socle degree.
    pub fn at(&self, j: i64) -> u32 {
        if j < 0 {
            0
        } else {
            self.values.get(j as usize).copied().unwrap_or(0)
        }
    }

    /// The order `d`: least `j` with `h(j) < j + 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The socle degree `s`: largest `j` with `h(j) > 0`.
    pub fn socle_degree(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    /// Length of the Artinian quotient, `sum_j h(j)`.
    pub fn length(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    pub fn diff_profile(&self) -> DiffProfile {
        DiffProfile::new(self)
    }

    /// `sum_{j in I} |Δ²h(j)|`, the least possible number of generators of a leading ideal.
    pub fn nu_star_lower(&self) -> u32 {
        let p = self.diff_profile();
        p.set_i.iter().map(|&j| p.delta2(j).unsigned_abs() as u32).sum()
    }

    /// `p + 1`, Iarrobino's lower bound on the number of generators of `I`.
    pub fn iarrobino_lower(&self) -> u32 {
        self.diff_profile().max_jump + 1
    }

    /// `d + 1`, the number of generators of the lex-segment ideal.
    pub fn lex_upper(&self) -> u32 {
        self.order + 1
    }

    /// Window for `ν(I*)` when `ν(I) = 3`: `(Σ_{I}|Δ²h|, Σ_{I}|Δ²h| + |H|)`.
    pub fn nu3_window(&self) -> Result<(u32, u32), OSeqError> {
        let p = self.diff_profile();
        if p.max_jump > 2 {
            return Err(OSeqError::JumpTooLarge { p: p.max_jump });
        }
        let lower = self.nu_star_lower();
        Ok((lower, lower + p.set_h.len() as u32))
    }

    /// Whether a complete intersection can have this Hilbert function: every `|Δh(j)| <= 1`.
    pub fn is_ci_admissible(&self) -> bool {
        self.diff_profile().max_jump <= 1
    }
}

impl TryFrom<Vec<i64>> for OSequence {
    type Error = OSeqError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Self::validate(&v)
    }
}

impl From<OSequence> for Vec<u32> {
    fn from(h: OSequence) -> Vec<u32> {
        h.values
    }
}

impl fmt::Display for OSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// First and second differences of an O-sequence (zero-extended on both sides)
/// together with the degree sets read off them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffProfile {
    /// `Δh(j)` for `j = 0..=s+1`.
    pub delta1: Vec<i64>,
    /// `Δ²h(j)` for `j = 0..=s+2`.
    pub delta2: Vec<i64>,
    /// Degrees `j >= 1` with `Δ²h(j) <= -1`.
    pub set_i: Vec<u32>,
    /// Degrees `j >= 1` with `Δ²h(j) >= 1`.
    pub set_j: Vec<u32>,
    /// Degrees with `Δ²h(j) = 0` and `Δh(j) = -1`.
    pub set_h: Vec<u32>,
    /// `max_{1 <= j <= s+1} |Δh(j)|`.
    pub max_jump: u32,
}

impl DiffProfile {
    fn new(h: &OSequence) -> Self {
        let s = h.socle_degree() as i64;
        let delta1: Vec<i64> = (0..=s + 1).map(|j| h.at(j) as i64 - h.at(j - 1) as i64).collect();
        let d1 = |j: i64| if j < 0 { 0 } else { delta1.get(j as usize).copied().unwrap_or(0) };
        let delta2: Vec<i64> = (0..=s + 2).map(|j| d1(j) - d1(j - 1)).collect();
        let pick = |pred: &dyn Fn(usize) -> bool| -> Vec<u32> {
            (1..delta2.len()).filter(|&j| pred(j)).map(|j| j as u32).collect()
        };
        let set_i = pick(&|j| delta2[j] <= -1);
        let set_j = pick(&|j| delta2[j] >= 1);
        let set_h = (0..delta2.len())
            .filter(|&j| delta2[j] == 0 && d1(j as i64) == -1)
            .map(|j| j as u32)
            .collect();
        let max_jump = delta1[1..].iter().map(|v| v.unsigned_abs() as u32).max().unwrap_or(0);
        Self {
            delta1,
            delta2,
            set_i,
            set_j,
            set_h,
            max_jump,
        }
    }

    pub fn delta1(&self, j: u32) -> i64 {
        self.delta1.get(j as usize).copied().unwrap_or(0)
    }

    pub fn delta2(&self, j: u32) -> i64 {
        self.delta2.get(j as usize).copied().unwrap_or(0)
    }
}
