use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fqprog::structure::{decompose, struct_dim_oracle, OracleLimits};
use fqprog::{Field, Subspace};
use fqprog_bench::subspace_batch;

fn bench_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for (spec, max_dim) in [("2^1", 8), ("3^1", 8), ("2^2", 8), ("2^1", 16)] {
        let field = Field::from_spec(spec, None).unwrap();
        let batch = subspace_batch(&field, 64, max_dim, 24);
        group.bench_with_input(
            BenchmarkId::new(spec, max_dim),
            &batch,
            |b, batch| {
                b.iter(|| {
                    for v in batch {
                        black_box(decompose(v).unwrap());
                    }
                })
            },
        );
    }
    group.finish();
}

fn bench_weak_dim(c: &mut Criterion) {
    let field = Field::prime(2).unwrap();
    let batch = subspace_batch(&field, 64, 16, 32);
    c.bench_function("weak_dim/2^1/16", |b| {
        b.iter(|| batch.iter().map(|v| black_box(v.weak_dim())).sum::<usize>())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let field = Field::prime(2).unwrap();
    let v = Subspace::span(
        &field,
        &[0usize, 2, 3, 4, 7, 8]
            .iter()
            .map(|&k| fqprog::Poly::monomial(&field, k))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    c.bench_function("struct_dim_oracle/dim6", |b| {
        b.iter(|| struct_dim_oracle(black_box(&v), &OracleLimits::default()).unwrap())
    });
}

criterion_group!(benches, bench_decompose, bench_weak_dim, bench_oracle);
criterion_main!(benches);
