//! Numerical invariants of complete intersections: the `(c, e)` sequences read
//! off the leading ideal, the Hilbert function and series they determine, and
//! the translation to the `d`-sequences of Goto, Heinzer and Kim.

use serde::{Deserialize, Serialize};

use super::{min_star_table, BettiTable, CancelError};
use crate::oseq::OSequence;

/// Orders `c = (c_1, ..., c_n)` of a minimal basis of `I*` and syzygy degrees
/// `e = (0, e_2, ..., e_n)` (the leading `0` stands for the unit in `P/I*`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeqRepr", into = "SeqRepr")]
pub struct CISequences {
    c: Vec<u32>,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SeqRepr {
    c: Vec<u32>,
    e: Vec<u32>,
}

impl TryFrom<SeqRepr> for CISequences {
    type Error = CancelError;
    fn try_from(r: SeqRepr) -> Result<Self, CancelError> {
        Self::new(r.c, r.e)
    }
}

impl From<CISequences> for SeqRepr {
    fn from(s: CISequences) -> Self {
        Self { c: s.c, e: s.e }
    }
}

fn invalid(msg: String) -> CancelError {
    CancelError::InvalidSequences(msg)
}

/// Conditions on `c` alone: `2 <= n <= c_1 + 1`, `c_1 <= c_2` and `c_i + 2 <= c_{i+1}` for `i >= 2`.
fn check_c(c: &[u32]) -> Result<(), CancelError> {
    let n = c.len();
    if n < 2 {
        return Err(invalid(format!("need at least two orders, got {n}")));
    }
    if c[0] == 0 {
        return Err(invalid("c_1 must be positive".into()));
    }
    if n > c[0] as usize + 1 {
        return Err(invalid(format!("n = {n} exceeds c_1 + 1 = {}", c[0] + 1)));
    }
    if c[0] == 1 && c[1] == 1 {
        return Err(invalid("c = (1, 1) describes the maximal ideal itself".into()));
    }
    if c[0] > c[1] {
        return Err(invalid(format!("c_1 = {} exceeds c_2 = {}", c[0], c[1])));
    }
    for i in 1..n - 1 {
        if c[i] + 2 > c[i + 1] {
            return Err(invalid(format!(
                "c_{} + 2 <= c_{} fails: {} and {}",
                i + 1,
                i + 2,
                c[i],
                c[i + 1]
            )));
        }
    }
    Ok(())
}

impl CISequences {
    /// Validates `c` and `e` (with `e_1 = 0` included).
    pub fn new(c: Vec<u32>, e: Vec<u32>) -> Result<Self, CancelError> {
        check_c(&c)?;
        let n = c.len();
        if e.len() != n {
            return Err(invalid(format!("c has {n} entries but e has {}", e.len())));
        }
        if e[0] != 0 {
            return Err(invalid(format!("e_1 must be 0, got {}", e[0])));
        }
        for i in 1..n {
            if e[i] < c[i] + 1 {
                return Err(invalid(format!("e_{} = {} is below c_{} + 1 = {}", i + 1, e[i], i + 1, c[i] + 1)));
            }
            if i + 1 < n && e[i] >= c[i + 1] {
                return Err(invalid(format!("e_{} = {} is not below c_{} = {}", i + 1, e[i], i + 2, c[i + 1])));
            }
        }
        let excess: u32 = (1..n).map(|i| e[i] - c[i]).sum();
        if excess != c[0] {
            return Err(invalid(format!("sum of e_i - c_i is {excess}, expected c_1 = {}", c[0])));
        }
        Ok(Self { c, e })
    }

    /// Same as [`CISequences::new`] with `e` given without its leading zero.
    pub fn from_tail(c: Vec<u32>, e_tail: &[u32]) -> Result<Self, CancelError> {
        let mut e = vec![0];
        e.extend_from_slice(e_tail);
        Self::new(c, e)
    }

    pub fn c(&self) -> &[u32] {
        &self.c
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn star_table(&self) -> BettiTable {
        BettiTable::from_degrees(&self.c, &self.e[1..]).expect("n generators and n - 1 syzygies")
    }
}

/// The `(c, e)` sequences of a complete intersection with Hilbert function `h`.
pub fn ci_sequences(h: &OSequence) -> Result<CISequences, CancelError> {
    if !h.is_ci_admissible() {
        return Err(CancelError::NotCIAdmissible(h.to_string()));
    }
    let t = min_star_table(h);
    CISequences::from_tail(t.beta0_degrees(), &t.beta1_degrees())
}

/// Hilbert series `N(t) / (1 - t)^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub dim: u32,
}

impl HilbertSeries {
    /// The first `len` coefficients of the power series.
    pub fn expansion(&self, len: usize) -> Vec<i64> {
        let mut a: Vec<i64> = (0..len).map(|j| self.numerator.get(j).copied().unwrap_or(0)).collect();
        for _ in 0..self.dim {
            for j in 1..len {
                a[j] += a[j - 1];
            }
        }
        a
    }

    /// For `dim = 2` the series is a polynomial; this is its coefficient list.
    pub fn polynomial(&self) -> Option<Vec<i64>> {
        if self.dim != 2 {
            return None;
        }
        let mut a = self.expansion(self.numerator.len() + 1);
        while a.last() == Some(&0) {
            a.pop();
        }
        Some(a)
    }
}

/// `sum_i (t^{e_i} - t^{c_i}) / (1 - t)^dim`.
pub fn series_from_sequences(seqs: &CISequences, dim: u32) -> Result<HilbertSeries, CancelError> {
    if dim < 2 {
        return Err(CancelError::BadDimension(dim));
    }
    let top = *seqs.e.iter().chain(&seqs.c).max().unwrap() as usize;
    let mut numerator = vec![0i64; top + 1];
    for (&e, &c) in seqs.e.iter().zip(&seqs.c) {
        numerator[e as usize] += 1;
        numerator[c as usize] -= 1;
    }
    Ok(HilbertSeries { numerator, dim })
}

/// The Hilbert function built from `q`, then `p = Σq` and `h = Σp`.
pub fn h_from_sequences(seqs: &CISequences) -> Result<OSequence, CancelError> {
    let top = *seqs.e.last().unwrap() as usize;
    let mut q = vec![0i64; top + 1];
    q[0] = 1;
    for i in 0..seqs.n() {
        q[seqs.c[i] as usize] -= 1;
        if i > 0 {
            q[seqs.e[i] as usize] += 1;
        }
    }
    let (mut p, mut h) = (0i64, 0i64);
    let values: Vec<i64> = q
        .iter()
        .map(|&qj| {
            p += qj;
            h += p;
            h
        })
        .collect();
    OSequence::validate(&values).map_err(|err| invalid(err.to_string()))
}

/// `e(G) = sum_i [e_i(e_i - 1) - c_i(c_i - 1)] / 2`.
pub fn multiplicity(seqs: &CISequences) -> u64 {
    let tri = |v: u32| v as i64 * (v as i64 - 1);
    let total: i64 = seqs.e.iter().zip(&seqs.c).map(|(&e, &c)| tri(e) - tri(c)).sum();
    (total / 2) as u64
}

/// `a(G) = e_n - dim`.
pub fn a_invariant(seqs: &CISequences, dim: u32) -> Result<i64, CancelError> {
    if dim < 2 {
        return Err(CancelError::BadDimension(dim));
    }
    Ok(*seqs.e.last().unwrap() as i64 - dim as i64)
}

fn check_d(d: &[u32], c1: u32) -> Result<(), CancelError> {
    let bad = || CancelError::MonotonicityViolation(format!("{d:?}"));
    if d.first() != Some(&c1) || d.last() != Some(&0) {
        return Err(bad());
    }
    if d.windows(2).any(|w| w[0] <= w[1]) {
        return Err(bad());
    }
    Ok(())
}

/// `e_i = c_i + (d_{i-1} - d_i)`, with `e_1 = 0`.
pub fn di_to_ei(c: &[u32], d: &[u32]) -> Result<Vec<u32>, CancelError> {
    if c.len() != d.len() || c.is_empty() {
        return Err(invalid(format!("c has {} entries but d has {}", c.len(), d.len())));
    }
    check_d(d, c[0])?;
    let mut e = vec![0];
    e.extend((1..c.len()).map(|i| c[i] + d[i - 1] - d[i]));
    Ok(e)
}

/// Inverse of [`di_to_ei`]: `d_1 = c_1` and `d_i = d_{i-1} - (e_i - c_i)`.
pub fn ei_to_di(c: &[u32], e: &[u32]) -> Result<Vec<u32>, CancelError> {
    if c.len() != e.len() || c.is_empty() {
        return Err(invalid(format!("c has {} entries but e has {}", c.len(), e.len())));
    }
    let mut d = vec![c[0] as i64];
    for i in 1..c.len() {
        d.push(d[i - 1] - (e[i] as i64 - c[i] as i64));
    }
    if d.iter().any(|&v| v < 0) {
        return Err(CancelError::MonotonicityViolation(format!("{d:?}")));
    }
    let d: Vec<u32> = d.into_iter().map(|v| v as u32).collect();
    check_d(&d, c[0])?;
    Ok(d)
}

/// Every `e` (leading zero included) compatible with `c`; empty when `c` itself is inadmissible.
pub fn enumerate_e_choices(c: &[u32]) -> Vec<Vec<u32>> {
    if check_c(c).is_err() {
        return Vec::new();
    }
    let n = c.len();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    // spend the budget c_1 on the excesses e_i - c_i, each at least 1
    fn rec(c: &[u32], i: usize, budget: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = c.len();
        if i == n - 1 {
            if budget >= 1 {
                e[i] = c[i] + budget;
                out.push(e.clone());
            }
            return;
        }
        let max_excess = (c[i + 1] - c[i] - 1).min(budget.saturating_sub((n - 1 - i) as u32));
        for k in 1..=max_excess {
            e[i] = c[i] + k;
            rec(c, i + 1, budget - k, e, out);
        }
    }
    rec(c, 1, c[0], &mut e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oseq::tests::ex25;
    use proptest::prelude::*;

    fn seqs(c: &[u32], e: &[u32]) -> CISequences {
        CISequences::from_tail(c.to_vec(), e).unwrap()
    }

    #[test]
    fn sequences_of_a_complete_intersection() {
        let s = ci_sequences(&ex25()).unwrap();
        assert_eq!(s.c(), &[4, 5, 8, 11]);
        assert_eq!(s.e(), &[0, 6, 9, 13]);
        let s = ci_sequences(&OSequence::from_values(&[1, 1]).unwrap()).unwrap();
        assert_eq!((s.c(), s.e()), (&[1, 2][..], &[0, 3][..]));
        assert!(matches!(
            ci_sequences(&crate::oseq::tests::ex14()),
            Err(CancelError::NotCIAdmissible(_))
        ));
    }

    #[test]
    fn hilbert_functions_from_sequences() {
        let h = h_from_sequences(&seqs(&[4, 5, 8, 11], &[6, 9, 13])).unwrap();
        assert_eq!(h.values(), &[1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]);
        let h = h_from_sequences(&seqs(&[4, 5, 8, 11], &[6, 10, 12])).unwrap();
        assert_eq!(h.values(), &[1, 2, 3, 4, 4, 3, 3, 3, 2, 1, 1]);
        let h = h_from_sequences(&seqs(&[1, 2], &[3])).unwrap();
        assert_eq!(h.values(), &[1, 1]);
    }

    #[test]
    fn series_and_invariants() {
        let cases: [(&[u32], &[i64]); 3] = [
            (&[6, 9, 13], &[1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]),
            (&[6, 10, 12], &[1, 2, 3, 4, 4, 3, 3, 3, 2, 1, 1]),
            (&[7, 9, 12], &[1, 2, 3, 4, 4, 3, 2, 2, 1, 1, 1]),
        ];
        for (e, expected) in cases {
            let s = seqs(&[4, 5, 8, 11], e);
            let series = series_from_sequences(&s, 2).unwrap();
            assert_eq!(series.polynomial().unwrap(), expected.to_vec());
            // oracle: the length is the sum of the printed coefficients
            assert_eq!(multiplicity(&s), expected.iter().sum::<i64>() as u64);
        }
        let s = seqs(&[4, 5, 8, 11], &[6, 9, 13]);
        assert_eq!(multiplicity(&s), 30);
        assert_eq!(a_invariant(&s, 2), Ok(11));
        assert_eq!(a_invariant(&s, 3), Ok(10));
        assert_eq!(multiplicity(&seqs(&[4, 5, 8, 11], &[7, 9, 12])), 24);
        let k = seqs(&[1, 2], &[3]);
        assert_eq!(series_from_sequences(&k, 2).unwrap().polynomial().unwrap(), vec![1, 1]);
        assert_eq!(multiplicity(&k), 2);
        assert_eq!(a_invariant(&k, 2), Ok(1));
        assert!(series_from_sequences(&k, 1).is_err());
    }

    #[test]
    fn higher_dimension_series() {
        // dim 3: partial sums of the dim-2 coefficients
        let s = seqs(&[4, 5, 8, 11], &[6, 9, 13]);
        let three = series_from_sequences(&s, 3).unwrap().expansion(20);
        let two = series_from_sequences(&s, 2).unwrap().expansion(20);
        let mut acc = 0;
        for j in 0..20 {
            acc += two[j];
            assert_eq!(three[j], acc);
        }
        // Hilbert function agrees with the (constant) polynomial exactly past a(G) = 10
        assert!(three[11..].windows(2).all(|w| w[0] == w[1]));
        assert_ne!(three[10], three[11]);
    }

    #[test]
    fn d_sequences() {
        let c = [4, 5, 8, 11];
        assert_eq!(ei_to_di(&c, &[0, 6, 9, 13]), Ok(vec![4, 3, 2, 0]));
        assert_eq!(di_to_ei(&c, &[4, 3, 2, 0]), Ok(vec![0, 6, 9, 13]));
        assert_eq!(di_to_ei(&[1, 2], &[1, 0]), Ok(vec![0, 3]));
        assert!(matches!(di_to_ei(&c, &[4, 4, 2, 0]), Err(CancelError::MonotonicityViolation(_))));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(CISequences::from_tail(vec![4, 5, 6, 11], &[6, 9, 13]).is_err());
        assert!(CISequences::from_tail(vec![4, 5, 8, 11], &[6, 9, 12]).is_err());
        assert!(CISequences::from_tail(vec![4, 5, 8, 11], &[5, 9, 14]).is_err());
        assert!(CISequences::from_tail(vec![4, 5, 8, 11], &[8, 9, 11]).is_err());
        assert!(CISequences::new(vec![1, 2], vec![1, 3]).is_err());
        assert!(CISequences::from_tail(vec![1, 3, 5], &[4, 6]).is_err());
    }

    /// Independent oracle: filter the box of sequences allowed by the range conditions alone.
    fn e_choices_oracle(c: &[u32]) -> Vec<Vec<u32>> {
        let n = c.len();
        let lo: Vec<u32> = (1..n).map(|i| c[i] + 1).collect();
        let hi: Vec<u32> = (1..n).map(|i| if i + 1 < n { c[i + 1] - 1 } else { c[i] + c[0] }).collect();
        let mut out = Vec::new();
        let mut idx = lo.clone();
        loop {
            let mut e = vec![0];
            e.extend(idx.iter().copied());
            if CISequences::new(c.to_vec(), e.clone()).is_ok() {
                out.push(e);
            }
            let mut k = 0;
            loop {
                if k == n - 1 {
                    return out;
                }
                idx[k] += 1;
                if idx[k] <= hi[k] {
                    break;
                }
                idx[k] = lo[k];
                k += 1;
            }
        }
    }

    #[test]
    fn e_choices() {
        let got = enumerate_e_choices(&[4, 5, 8, 11]);
        assert_eq!(got, vec![vec![0, 6, 9, 13], vec![0, 6, 10, 12], vec![0, 7, 9, 12]]);
        assert_eq!(enumerate_e_choices(&[1, 2]), vec![vec![0, 3]]);
        let mut oracle = e_choices_oracle(&[3, 4, 7]);
        oracle.sort();
        assert_eq!(enumerate_e_choices(&[3, 4, 7]), oracle);
        assert_eq!(oracle.len(), 2);
        assert!(enumerate_e_choices(&[3, 4, 5]).is_empty());
    }

    /// Random admissible `c` with `c_1 <= 6`.
    pub(crate) fn arb_c() -> impl Strategy<Value = Vec<u32>> {
        (1u32..=6, 0u32..3, proptest::collection::vec(2u32..6, 0..5)).prop_map(|(c1, gap, steps)| {
            let mut c = vec![c1, c1 + gap];
            for s in steps.into_iter().take(c1 as usize - 1) {
                c.push(c.last().unwrap() + s);
            }
            c
        })
    }

    proptest! {
        #[test]
        fn e_choices_match_oracle(c in arb_c()) {
            let mut oracle = e_choices_oracle(&c);
            oracle.sort();
            prop_assert_eq!(enumerate_e_choices(&c), oracle);
        }

        #[test]
        fn sequence_round_trips(c in arb_c(), pick in any::<prop::sample::Index>()) {
            let choices = enumerate_e_choices(&c);
            prop_assume!(!choices.is_empty());
            let e = pick.get(&choices).clone();
            let s = CISequences::new(c.clone(), e.clone()).unwrap();
            let h = h_from_sequences(&s).unwrap();
            prop_assert!(h.is_ci_admissible());
            prop_assert_eq!(ci_sequences(&h).unwrap(), s.clone());
            prop_assert_eq!(multiplicity(&s), h.length());
            let d = ei_to_di(&c, &e).unwrap();
            prop_assert_eq!(di_to_ei(&c, &d).unwrap(), e);
            prop_assert_eq!(h.at(*s.e().last().unwrap() as i64 - 2), 1);
        }
    }
}
