use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use filiform_core::algebra::ParamVector;
use filiform_core::classify::verify_classification;
use filiform_core::exec::Execution;
use filiform_core::invariants::invariant_vector;
use filiform_core::transform::{rho_apply_batch, TransformParams};
use filiform_core::QiScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn batch(n: usize, count: usize) -> Vec<ParamVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    (0..count)
        .map(|_| {
            let v = (0..n - 1).map(|_| QiScalar::ratio(rng.gen_range(1..=9), rng.gen_range(1..=5))).collect();
            ParamVector::from_tuple(v).unwrap()
        })
        .collect()
}

fn rho(c: &mut Criterion) {
    let tp = TransformParams::new(QiScalar::ratio(3, 2), QiScalar::ratio(-1, 3), QiScalar::from_int(2)).unwrap();
    let mut group = c.benchmark_group("rho_apply_batch");
    for n in [6, 10] {
        let ps = batch(n, 512);
        group.throughput(Throughput::Elements(ps.len() as u64));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &ps, |b, ps| {
                b.iter(|| rho_apply_batch(&tp, black_box(ps), exec))
            });
        }
    }
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let ps = batch(10, 512);
    let mut group = c.benchmark_group("invariant_vector_batch");
    group.throughput(Throughput::Elements(ps.len() as u64));
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| exec.map(black_box(&ps), |p| invariant_vector(p).ok())));
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_classification");
    group.sample_size(10);
    for dim in [5, 6] {
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, dim), |b| {
                b.iter(|| verify_classification(dim, 10, 0, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, rho, invariants, audit);
criterion_main!(benches);
