//! Betti tables of height-two ideals and the zero/negative cancellation
//! calculus that relates the lex-segment table, the leading-ideal table and
//! the generator count of the local ideal.

mod ci;
mod enumerate;

pub use ci::{
    a_invariant, ci_sequences, di_to_ei, ei_to_di, enumerate_e_choices, h_from_sequences, multiplicity,
    series_from_sequences, CISequences, HilbertSeries,
};
pub use enumerate::{enumerate_cancellation_outcomes, EnumerationLimits, Outcome, Schedule};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexseg::{ek_betti, lex_ideal};
use crate::oseq::OSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CancelError {
    #[error("the table has no {position} to cancel")]
    MissingEntry { position: String },
    #[error("a cancellation needs syzygy degree <= generator degree, got ({syz}, {gen})")]
    InvalidCancellation { syz: u32, gen: u32 },
    #[error("malformed Betti table: {0}")]
    MalformedTable(String),
    #[error("Hilbert function {0} has a jump larger than 1, so it is not that of a complete intersection")]
    NotCIAdmissible(String),
    #[error("invalid (c, e) sequences: {0}")]
    InvalidSequences(String),
    #[error("d-sequence violates d_1 = c_1 > d_2 > ... > d_n = 0: {0}")]
    MonotonicityViolation(String),
    #[error("no admissible cancellation schedule reaches {target} generators")]
    Unreachable { target: u32 },
    #[error("order {d} exceeds the enumeration cap {cap}")]
    TooLarge { d: u32, cap: u32 },
    #[error("ring dimension must be at least 2, got {0}")]
    BadDimension(u32),
}

/// Graded Betti numbers of a height-two ideal: generator degrees (`beta0`)
/// and syzygy degrees (`beta1`), each as degree -> multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct BettiTable {
    beta0: BTreeMap<u32, u32>,
    beta1: BTreeMap<u32, u32>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    beta0: BTreeMap<u32, u32>,
    beta1: BTreeMap<u32, u32>,
}

impl TryFrom<TableRepr> for BettiTable {
    type Error = CancelError;
    fn try_from(r: TableRepr) -> Result<Self, CancelError> {
        Self::new(r.beta0, r.beta1)
    }
}

impl From<BettiTable> for TableRepr {
    fn from(t: BettiTable) -> Self {
        Self {
            beta0: t.beta0,
            beta1: t.beta1,
        }
    }
}

fn multiset(degrees: &[u32]) -> BTreeMap<u32, u32> {
    let mut m = BTreeMap::new();
    for &d in degrees {
        *m.entry(d).or_insert(0) += 1;
    }
    m
}

impl BettiTable {
    /// Checks `sum beta0 = sum beta1 + 1`; zero multiplicities are dropped.
    pub fn new(mut beta0: BTreeMap<u32, u32>, mut beta1: BTreeMap<u32, u32>) -> Result<Self, CancelError> {
        beta0.retain(|_, m| *m > 0);
        beta1.retain(|_, m| *m > 0);
        let t = Self { beta0, beta1 };
        if t.total0() != t.total1() + 1 {
            return Err(CancelError::MalformedTable(format!(
                "{} generators against {} syzygies",
                t.total0(),
                t.total1()
            )));
        }
        Ok(t)
    }

    pub fn from_degrees(gens: &[u32], syz: &[u32]) -> Result<Self, CancelError> {
        Self::new(multiset(gens), multiset(syz))
    }

    pub fn beta0(&self) -> &BTreeMap<u32, u32> {
        &self.beta0
    }

    pub fn beta1(&self) -> &BTreeMap<u32, u32> {
        &self.beta1
    }

    pub fn total0(&self) -> u32 {
        self.beta0.values().sum()
    }

    pub fn total1(&self) -> u32 {
        self.beta1.values().sum()
    }

    pub fn beta0_degrees(&self) -> Vec<u32> {
        expand(&self.beta0)
    }

    pub fn beta1_degrees(&self) -> Vec<u32> {
        expand(&self.beta1)
    }

    /// Coefficients of `1 - sum_j beta0_j t^j + sum_j beta1_j t^j`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let top = self
            .beta0
            .keys()
            .chain(self.beta1.keys())
            .max()
            .copied()
            .unwrap_or(0) as usize;
        let mut k = vec![0i64; top + 1];
        k[0] = 1;
        for (&j, &m) in &self.beta0 {
            k[j as usize] -= m as i64;
        }
        for (&j, &m) in &self.beta1 {
            k[j as usize] += m as i64;
        }
        trim(k)
    }

    /// Degrees at which a zero cancellation is currently possible.
    pub fn zero_cancellation_degrees(&self) -> Vec<u32> {
        self.beta0
            .keys()
            .filter(|j| self.beta1.contains_key(j))
            .copied()
            .collect()
    }

    /// Removes one syzygy of degree `j` and one generator of degree `j'`.
    pub fn apply(&self, c: &Cancellation) -> Result<BettiTable, CancelError> {
        let mut next = self.clone();
        take(&mut next.beta1, c.syz_degree).ok_or_else(|| CancelError::MissingEntry {
            position: format!("syzygy P(-{})", c.syz_degree),
        })?;
        take(&mut next.beta0, c.gen_degree).ok_or_else(|| CancelError::MissingEntry {
            position: format!("generator P(-{})", c.gen_degree),
        })?;
        Ok(next)
    }

    /// Applies every possible zero cancellation.
    pub fn cancel_all_zero(&self) -> BettiTable {
        let mut next = self.clone();
        for j in self.zero_cancellation_degrees() {
            let k = self.beta0[&j].min(self.beta1[&j]);
            for _ in 0..k {
                next = next.apply(&Cancellation::zero(j)).expect("entry present");
            }
        }
        next
    }

    /// The resolution in `P(-j)` notation, e.g. `P(-10) ⊕ P(-12) ⊕ P^3(-15)`.
    pub fn format_gens(&self) -> String {
        format_sum(&self.beta0)
    }

    pub fn format_syz(&self) -> String {
        format_sum(&self.beta1)
    }
}

fn expand(m: &BTreeMap<u32, u32>) -> Vec<u32> {
    m.iter()
        .flat_map(|(&d, &k)| std::iter::repeat_n(d, k as usize))
        .collect()
}

fn take(m: &mut BTreeMap<u32, u32>, j: u32) -> Option<()> {
    let e = m.get_mut(&j)?;
    *e -= 1;
    if *e == 0 {
        m.remove(&j);
    }
    Some(())
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn format_sum(m: &BTreeMap<u32, u32>) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter()
        .map(|(&d, &k)| if k == 1 { format!("P(-{d})") } else { format!("P^{k}(-{d})") })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 → {} → {} → J → 0", self.format_syz(), self.format_gens())
    }
}

/// `(1 - t)^2 h(t)` as a coefficient list.
pub fn k_polynomial_of(h: &OSequence) -> Vec<i64> {
    let p = h.diff_profile();
    trim(p.delta2.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CancellationKind {
    Zero,
    Negative,
}

/// A pair `(P(-j), P(-j'))`: a syzygy of degree `j` cancelled against a
/// generator of degree `j' >= j`. Serialized as `[j, j']`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct Cancellation {
    syz_degree: u32,
    gen_degree: u32,
}

impl Cancellation {
    pub fn new(syz_degree: u32, gen_degree: u32) -> Result<Self, CancelError> {
        if syz_degree > gen_degree {
            return Err(CancelError::InvalidCancellation {
                syz: syz_degree,
                gen: gen_degree,
            });
        }
        Ok(Self { syz_degree, gen_degree })
    }

    pub fn zero(degree: u32) -> Self {
        Self {
            syz_degree: degree,
            gen_degree: degree,
        }
    }

    pub fn syz_degree(&self) -> u32 {
        self.syz_degree
    }

    pub fn gen_degree(&self) -> u32 {
        self.gen_degree
    }

    pub fn kind(&self) -> CancellationKind {
        if self.syz_degree == self.gen_degree {
            CancellationKind::Zero
        } else {
            CancellationKind::Negative
        }
    }
}

impl TryFrom<(u32, u32)> for Cancellation {
    type Error = CancelError;
    fn try_from((j, jp): (u32, u32)) -> Result<Self, CancelError> {
        Self::new(j, jp)
    }
}

impl From<Cancellation> for (u32, u32) {
    fn from(c: Cancellation) -> Self {
        (c.syz_degree, c.gen_degree)
    }
}

impl fmt::Display for Cancellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(P(-{}), P(-{}))", self.syz_degree, self.gen_degree)
    }
}

/// The Betti table of a leading ideal with the fewest generators allowed by `h`:
/// `beta0_j = |Δ²h(j)|` for `Δ²h(j) < 0` and `beta1_j = Δ²h(j)` for `Δ²h(j) > 0`.
pub fn min_star_table(h: &OSequence) -> BettiTable {
    let p = h.diff_profile();
    let beta0 = p.set_i.iter().map(|&j| (j, p.delta2(j).unsigned_abs() as u32)).collect();
    let beta1 = p.set_j.iter().map(|&j| (j, p.delta2(j) as u32)).collect();
    BettiTable::new(beta0, beta1).expect("second differences sum to zero")
}

/// The Eliahou-Kervaire table of the lex ideal of `h`.
pub fn lex_table(h: &OSequence) -> BettiTable {
    ek_betti(&lex_ideal(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oseq::tests::{arb_oseq, ex14, ex25};
    use proptest::prelude::*;

    fn table(gens: &[u32], syz: &[u32]) -> BettiTable {
        BettiTable::from_degrees(gens, syz).unwrap()
    }

    #[test]
    fn apply_zero_cancellation() {
        let ek = lex_table(&ex14());
        let t = ek.apply(&Cancellation::zero(13)).unwrap();
        assert_eq!((t.total0(), t.total1()), (10, 9));
        let t = lex_table(&ex25()).apply(&Cancellation::zero(12)).unwrap();
        assert_eq!(t, table(&[4, 5, 8, 11], &[6, 9, 13]));
    }

    #[test]
    fn apply_missing_entry() {
        let t = lex_table(&ex25());
        assert!(matches!(t.apply(&Cancellation::zero(7)), Err(CancelError::MissingEntry { .. })));
        assert!(matches!(t.apply(&Cancellation::new(6, 7).unwrap()), Err(CancelError::MissingEntry { .. })));
        assert!(Cancellation::new(8, 6).is_err());
    }

    #[test]
    fn minimal_star_tables() {
        assert_eq!(
            min_star_table(&ex14()),
            table(&[10, 12, 15, 15, 15, 18, 19], &[14, 16, 17, 17, 20, 20])
        );
        assert_eq!(min_star_table(&ex25()), table(&[4, 5, 8, 11], &[6, 9, 13]));
        assert_eq!(min_star_table(&OSequence::from_values(&[1, 1]).unwrap()), table(&[1, 2], &[3]));
        // equal orders: beta0 has multiplicity 2 at c_1 = c_2
        assert_eq!(min_star_table(&OSequence::from_values(&[1, 2, 1]).unwrap()), table(&[2, 2], &[4]));
    }

    #[test]
    fn resolution_notation() {
        let t = min_star_table(&ex14());
        assert_eq!(t.format_gens(), "P(-10) ⊕ P(-12) ⊕ P^3(-15) ⊕ P(-18) ⊕ P(-19)");
        assert_eq!(t.format_syz(), "P(-14) ⊕ P(-16) ⊕ P^2(-17) ⊕ P^2(-20)");
    }

    #[test]
    fn json_shape() {
        let t = table(&[1, 2], &[3]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"beta0":{"1":1,"2":1},"beta1":{"3":1}}"#);
        assert_eq!(serde_json::from_str::<BettiTable>(&s).unwrap(), t);
        assert!(serde_json::from_str::<BettiTable>(r#"{"beta0":{"1":1},"beta1":{"3":1}}"#).is_err());
    }

    proptest! {
        #[test]
        fn star_table_is_ek_after_zero_cancellations(h in arb_oseq(10, 4)) {
            let star = min_star_table(&h);
            prop_assert_eq!(star.k_polynomial(), k_polynomial_of(&h));
            prop_assert_eq!(star.total0(), star.total1() + 1);
            prop_assert_eq!(star.total0(), h.nu_star_lower());
            prop_assert_eq!(lex_table(&h).cancel_all_zero(), star);
        }
    }
}
