//! Sequential versus data-parallel runs of the two batch workloads: the
//! witness suite of a certificate and the random syzygy comparison.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilit::acceptance::{criterion_1, AcceptanceConfig};
use trilit::algebra::samples::dual_numbers;
use trilit::exactlin::Fp;
use trilit::litcore::{standard_suite, verify_suite};
use trilit::par::Parallelism;
use trilit::towers::{base_certificate, bn};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Auto),
];

fn witness_suite(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let t = dual_numbers(Fp::two());
    let cert_t = base_certificate(&t, &mut rng).unwrap();
    let tower = bn(&t, &cert_t, 3, &mut rng).unwrap();
    let targets = standard_suite(tower.algebra(), 2, 16, 8, 40, &mut rng);
    let mut group = c.benchmark_group("witness_suite_b3");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_suite(&tower.certificate, &targets, 4, 0, mode))
        });
    }
    group.finish();
}

fn syzygy_comparison(c: &mut Criterion) {
    let mut group = c.benchmark_group("triangular_syzygies");
    group.sample_size(10);
    for (name, mode) in MODES {
        let cfg = AcceptanceConfig { seed: 0, mode };
        group.bench_function(name, |b| b.iter(|| criterion_1(&cfg)));
    }
    group.finish();
}

criterion_group!(benches, witness_suite, syzygy_comparison);
criterion_main!(benches);
