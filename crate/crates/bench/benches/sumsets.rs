use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fqprog::{dilate_example, entropic_distance, growth_report, Field};
use fqprog_bench::even_power_set;

fn bench_sumsets(c: &mut Criterion) {
    let field = Field::prime(2).unwrap();
    let a = even_power_set(&field, 6);
    c.bench_function("dilate_sum/even_powers_64", |b| {
        b.iter(|| black_box(a.dilate_sum().unwrap().len()))
    });
    c.bench_function("doubling_stats/even_powers_64", |b| {
        b.iter(|| black_box(a.doubling_stats().unwrap()))
    });
    c.bench_function("entropic_distance/even_powers_64", |b| {
        b.iter(|| black_box(entropic_distance(&a, &a).unwrap()))
    });
}

fn bench_dilate_lab(c: &mut Criterion) {
    let a = dilate_example(2, 2, 3, 1 << 20).unwrap();
    c.bench_function("growth_report/2_2_3", |b| {
        b.iter(|| black_box(growth_report(&a).unwrap()))
    });
}

criterion_group!(benches, bench_sumsets, bench_dilate_lab);
criterion_main!(benches);
