//! Desk-scale benchmarks: curve arithmetic, record construction,
//! factorization and the brute-force search.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cnpair_core::arith::{factorize, int, rat};
use cnpair_core::curve::{primary_seed, CongruentCurve};
use cnpair_core::{brute_force_system, make_pair, theorem1, SystemTag};

fn bench_curve_ops(c: &mut Criterion) {
    let curve = CongruentCurve::new(5).unwrap();
    let seed = primary_seed(5).unwrap();
    c.bench_function("curve_double_seed", |b| {
        b.iter(|| curve.double(black_box(&seed)).unwrap())
    });
    c.bench_function("curve_multiply_8", |b| {
        b.iter(|| curve.multiply(8, black_box(&seed)).unwrap())
    });
    let big = curve.multiply(6, &seed).unwrap();
    c.bench_function("curve_double_large_point", |b| {
        b.iter(|| curve.double(black_box(&big)).unwrap())
    });
}

fn bench_construction(c: &mut Criterion) {
    let curve = CongruentCurve::new(6).unwrap();
    let pair = make_pair(&curve, &int(18), &rat(19602, 2209)).unwrap();
    c.bench_function("theorem1_reference_pair", |b| {
        b.iter(|| theorem1(black_box(&pair)).unwrap())
    });
}

fn bench_factorization(c: &mut Criterion) {
    let semiprime = int(1_000_003) * int(1_000_033);
    c.bench_function("factorize_semiprime", |b| {
        b.iter(|| factorize(black_box(semiprime.numer())).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    c.bench_function("brute_force_legs_legs_10_500", |b| {
        b.iter(|| brute_force_system(SystemTag::LegsCommonLegSquares, 10, 500))
    });
}

criterion_group!(
    benches,
    bench_curve_ops,
    bench_construction,
    bench_factorization,
    bench_oracle
);
criterion_main!(benches);
