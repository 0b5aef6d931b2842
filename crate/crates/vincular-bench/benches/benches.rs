use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use vincular::classify::classify_quasi_consecutive;
use vincular::enumerate::{count_avoiders, count_avoiders_naive};
use vincular::fillings::{check_filling_shape_wilf, diagrams_up_to};
use vincular::recursion::{build_tables_sigma, build_tables_tau};
use vincular::VincularPattern;

fn bench_counting(c: &mut Criterion) {
    let consecutive: VincularPattern = "1342".parse().unwrap();
    let quasi: VincularPattern = "2153-4".parse().unwrap();
    let classical: VincularPattern = "1-3-2".parse().unwrap();

    c.bench_function("count consecutive 1342 n=8", |b| {
        b.iter(|| count_avoiders(black_box(&consecutive), 8).unwrap())
    });
    c.bench_function("count quasi 2153-4 n=9", |b| {
        b.iter(|| count_avoiders(black_box(&quasi), 9).unwrap())
    });
    c.bench_function("count classical 1-3-2 n=8", |b| {
        b.iter(|| count_avoiders(black_box(&classical), 8).unwrap())
    });
    c.bench_function("count naive 2153-4 n=7", |b| {
        b.iter(|| count_avoiders_naive(black_box(&quasi), 7).unwrap())
    });
}

fn bench_recursion(c: &mut Criterion) {
    c.bench_function("triangle tables n<=9 both patterns", |b| {
        b.iter(|| {
            (
                build_tables_sigma(black_box(9)).unwrap(),
                build_tables_tau(black_box(9)).unwrap(),
            )
        })
    });
}

fn bench_classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classification");
    group.sample_size(10);
    group.bench_function("length 4, n<=9", |b| {
        b.iter(|| classify_quasi_consecutive(black_box(4), 9).unwrap())
    });
    group.finish();
}

fn bench_fillings(c: &mut Criterion) {
    let sigma: VincularPattern = "1342".parse().unwrap();
    let tau: VincularPattern = "1432".parse().unwrap();
    c.bench_function("diagram generation <=12 cells", |b| {
        b.iter(|| diagrams_up_to(black_box(12)))
    });
    c.bench_function("filling sweep 1342/1432 <=8 cells", |b| {
        b.iter(|| check_filling_shape_wilf(black_box(&sigma), &tau, 8, false).unwrap())
    });
}

criterion_group!(
    benches,
    bench_counting,
    bench_recursion,
    bench_classification,
    bench_fillings
);
criterion_main!(benches);
