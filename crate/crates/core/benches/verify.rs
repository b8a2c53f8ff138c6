use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tclab::cancel::CISequences;
use tclab::localring::DEFAULT_TRUNCATION_CAP;
use tclab::par;
use tclab::pipeline::{ci_schedule, certify, construct, Construction};
use tclab::poly::PrimeField;

/// Every complete intersection with the given `c`, built and ready to certify.
fn batch(c: &[u32]) -> Vec<Construction> {
    tclab::cancel::enumerate_e_choices(c)
        .into_iter()
        .map(|e| {
            let seqs = CISequences::new(c.to_vec(), e).unwrap();
            let (h, s) = ci_schedule(&seqs).unwrap();
            construct(&h, &s, PrimeField::default()).unwrap()
        })
        .collect()
}

fn bench_certify(cr: &mut Criterion) {
    let mut group = cr.benchmark_group("certify_batch");
    group.sample_size(10);
    for c in [vec![4, 5, 8, 11], vec![5, 6, 9, 12, 15]] {
        let items = batch(&c);
        let label = format!("{c:?} x{}", items.len());
        group.bench_with_input(BenchmarkId::new("parallel", &label), &items, |b, items| {
            b.iter(|| par::map(items, |x| certify(x, DEFAULT_TRUNCATION_CAP).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &items, |b, items| {
            b.iter(|| par::map_sequential(items, |x| certify(x, DEFAULT_TRUNCATION_CAP).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_certify);
criterion_main!(benches);
