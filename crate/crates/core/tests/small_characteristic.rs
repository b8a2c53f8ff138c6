//! The constructions only use coefficients in {0, ±1, ±2, 4}, so they should
//! survive every allowed prime, not just the default one.

use tclab::cancel::{enumerate_e_choices, CISequences, Cancellation, Schedule};
use tclab::localring::DEFAULT_TRUNCATION_CAP;
use tclab::oseq::OSequence;
use tclab::pipeline::{ci_schedule, certify, construct};
use tclab::poly::PrimeField;

const PRIMES: [u32; 4] = [5, 7, 11, 32003];

#[test]
fn four_generated_example() {
    let h = OSequence::from_values(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 9, 8, 8, 5, 3, 3, 2]).unwrap();
    let schedule = Schedule {
        zero: vec![13, 16, 16, 19],
        negative: [(14, 15), (16, 18), (17, 19)]
            .iter()
            .map(|&(a, b)| Cancellation::new(a, b).unwrap())
            .collect(),
    };
    for p in PRIMES {
        let c = construct(&h, &schedule, PrimeField::new(p).unwrap()).unwrap();
        let cert = certify(&c, DEFAULT_TRUNCATION_CAP).unwrap();
        assert!(cert.realizes(&c), "p = {p}");
        assert_eq!(cert.local.prime, p);
    }
}

#[test]
fn complete_intersections() {
    for c in [vec![4, 5, 8, 11], vec![3, 3, 6], vec![5, 6, 9, 12, 15]] {
        for e in enumerate_e_choices(&c) {
            let seqs = CISequences::new(c.clone(), e).unwrap();
            let (h, schedule) = ci_schedule(&seqs).unwrap();
            for p in PRIMES {
                let built = construct(&h, &schedule, PrimeField::new(p).unwrap()).unwrap();
                let cert = certify(&built, DEFAULT_TRUNCATION_CAP).unwrap();
                assert!(cert.realizes(&built), "{c:?} {:?} p = {p}", seqs.e());
                assert_eq!(cert.local.nu, 2);
            }
        }
    }
}
