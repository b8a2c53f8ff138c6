//! Exhaustive search over cancellation schedules that start from the
//! Eliahou-Kervaire table of the lex ideal.
//!
//! A schedule first performs some zero cancellations (giving a candidate
//! leading-ideal table) and then negative ones until the generator count hits
//! the target. A negative cancellation is admissible only when the matrix
//! perturbation that realizes it finds a free slot, so every outcome comes
//! with a concrete local Hilbert-Burch matrix.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{BettiTable, CancelError, Cancellation};
use crate::lexseg::lex_ideal;
use crate::oseq::OSequence;
use crate::par;
use crate::poly::{HilbertBurchMatrix, PrimeField};

/// Zero cancellations (by degree, with repetition) followed by negative ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Schedule {
    #[serde(default)]
    pub zero: Vec<u32>,
    #[serde(default)]
    pub negative: Vec<Cancellation>,
}

impl Schedule {
    /// Every zero cancellation the lex table admits, and nothing else.
    pub fn all_zero(h: &OSequence) -> Self {
        let ek = lex_ideal(h).betti();
        let zero = ek
            .zero_cancellation_degrees()
            .into_iter()
            .flat_map(|j| std::iter::repeat_n(j, ek.beta0()[&j].min(ek.beta1()[&j]) as usize))
            .collect();
        Self {
            zero,
            negative: Vec::new(),
        }
    }

    pub fn cancellations(&self) -> impl Iterator<Item = Cancellation> + '_ {
        self.zero
            .iter()
            .map(|&j| Cancellation::zero(j))
            .chain(self.negative.iter().copied())
    }

    /// Applies the zero part, then the negative part, returning both tables.
    pub fn apply(&self, ek: &BettiTable) -> Result<(BettiTable, BettiTable), CancelError> {
        let mut star = ek.clone();
        for &j in &self.zero {
            star = star.apply(&Cancellation::zero(j))?;
        }
        let mut local = star.clone();
        for c in &self.negative {
            if c.kind() != super::CancellationKind::Negative {
                return Err(CancelError::InvalidCancellation {
                    syz: c.syz_degree(),
                    gen: c.gen_degree(),
                });
            }
            local = local.apply(c)?;
        }
        Ok((star, local))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest order `d` searched.
    pub max_order: u32,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self { max_order: 8 }
    }
}

/// One admissible schedule with the predicted tables of `I*` and of `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Outcome {
    pub nu_star: u32,
    pub schedule: Schedule,
    pub star: BettiTable,
    pub local: BettiTable,
}

/// All structurally admissible schedules ending with `target` generators.
pub fn enumerate_cancellation_outcomes(
    h: &OSequence,
    target: u32,
    limits: EnumerationLimits,
) -> Result<Vec<Outcome>, CancelError> {
    if h.order() > limits.max_order {
        return Err(CancelError::TooLarge {
            d: h.order(),
            cap: limits.max_order,
        });
    }
    let lex = lex_ideal(h);
    let ek = lex.betti();
    let field = PrimeField::default();
    let base = lex.hb_matrix(field);

    // every sub-multiset of the available zero cancellations
    let mut choices: Vec<Vec<u32>> = vec![Vec::new()];
    for j in ek.zero_cancellation_degrees() {
        let k = ek.beta0()[&j].min(ek.beta1()[&j]);
        choices = choices
            .into_iter()
            .flat_map(|c| {
                (0..=k).map(move |t| {
                    let mut c = c.clone();
                    c.extend(std::iter::repeat_n(j, t as usize));
                    c
                })
            })
            .collect();
    }

    let found = par::map(&choices, |zero| {
        let mut table = ek.clone();
        let mut matrix = base.clone();
        for &j in zero {
            let c = Cancellation::zero(j);
            table = table.apply(&c).ok()?;
            matrix = matrix.perturb(&c).ok()?;
        }
        if table.total0() < target {
            return Some(Vec::new());
        }
        let mut search = Search {
            target,
            zero,
            star: &table,
            seen: HashSet::new(),
            out: Vec::new(),
        };
        search.run(&table, &matrix, &mut Vec::new());
        Some(search.out)
    });
    let mut outcomes: Vec<Outcome> = found.into_iter().flatten().flatten().collect();
    outcomes.sort();
    outcomes.dedup();
    if outcomes.is_empty() {
        return Err(CancelError::Unreachable { target });
    }
    Ok(outcomes)
}

struct Search<'a> {
    target: u32,
    zero: &'a [u32],
    star: &'a BettiTable,
    seen: HashSet<(BettiTable, Vec<(usize, usize)>)>,
    out: Vec<Outcome>,
}

impl Search<'_> {
    fn run(&mut self, table: &BettiTable, matrix: &HilbertBurchMatrix, applied: &mut Vec<Cancellation>) {
        if !self.seen.insert((table.clone(), matrix.unit_positions())) {
            return;
        }
        if table.total0() == self.target {
            self.out.push(Outcome {
                nu_star: self.star.total0(),
                schedule: Schedule {
                    zero: self.zero.to_vec(),
                    negative: applied.clone(),
                },
                star: self.star.clone(),
                local: table.clone(),
            });
            return;
        }
        let floor = applied.last().copied();
        let syz: Vec<u32> = table.beta1().keys().copied().collect();
        let gens: Vec<u32> = table.beta0().keys().copied().collect();
        for &j in &syz {
            for &jp in gens.iter().filter(|&&jp| jp > j) {
                let c = Cancellation::new(j, jp).expect("j < j'");
                if floor.is_some_and(|f| c < f) {
                    continue;
                }
                let Ok(next_matrix) = matrix.perturb(&c) else { continue };
                let next_table = table.apply(&c).expect("entries present");
                applied.push(c);
                self.run(&next_table, &next_matrix, applied);
                applied.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancel::{ci_sequences, lex_table, min_star_table};
    use crate::oseq::tests::{arb_oseq, ex14};
    use proptest::prelude::*;

    #[test]
    fn koszul_case() {
        let h = OSequence::from_values(&[1, 1]).unwrap();
        let out = enumerate_cancellation_outcomes(&h, 2, EnumerationLimits::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].nu_star, 2);
        assert_eq!(out[0].star, BettiTable::from_degrees(&[1, 2], &[3]).unwrap());
        assert!(enumerate_cancellation_outcomes(&h, 1, EnumerationLimits::default()).is_err());
    }

    #[test]
    fn complete_intersection_table_is_forced() {
        let h = OSequence::from_values(&[1, 2, 2, 1]).unwrap();
        let out = enumerate_cancellation_outcomes(&h, 2, EnumerationLimits::default()).unwrap();
        let expected = ci_sequences(&h).unwrap().star_table();
        assert!(out.iter().any(|o| o.star == expected));
        for o in &out {
            assert_eq!(o.local.total0(), 2);
            assert!(o.nu_star >= expected.total0());
        }
    }

    #[test]
    fn example_target_four() {
        let h = ex14();
        assert!(matches!(
            enumerate_cancellation_outcomes(&h, 4, EnumerationLimits::default()),
            Err(CancelError::TooLarge { d: 10, cap: 8 })
        ));
        let out = enumerate_cancellation_outcomes(&h, 4, EnumerationLimits { max_order: 10 }).unwrap();
        let minimal = min_star_table(&h);
        assert!(out.iter().any(|o| o.nu_star == 7 && o.star == minimal));
        assert_eq!(Schedule::all_zero(&h).zero, vec![13, 16, 16, 19]);
    }

    #[test]
    fn schedule_json() {
        let s = Schedule {
            zero: vec![12],
            negative: vec![Cancellation::new(6, 8).unwrap()],
        };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"zero":[12],"negative":[[6,8]]}"#);
        assert_eq!(serde_json::from_str::<Schedule>(&text).unwrap(), s);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn outcomes_are_consistent(h in arb_oseq(5, 2)) {
            let Ok(out) = enumerate_cancellation_outcomes(&h, 3, EnumerationLimits::default()) else {
                return Ok(());
            };
            let (lo, _) = h.nu3_window().unwrap();
            let ek = lex_table(&h);
            for o in out {
                prop_assert_eq!(o.local.total0(), 3);
                prop_assert!(o.nu_star >= lo);
                prop_assert_eq!(o.schedule.apply(&ek).unwrap(), (o.star.clone(), o.local.clone()));
                prop_assert_eq!(o.star.k_polynomial(), ek.k_polynomial());
            }
        }
    }
}
