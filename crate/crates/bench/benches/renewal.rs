use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kaluza_core::kaluza::product_coeffs;
use kaluza_core::rational::ratio;
use kaluza_core::{certify, check_theorem1, check_theorem2, solve_renewal, solve_via_words, MultiTable};

fn lebesgue(dim: usize, n: usize) -> MultiTable {
    let h: Vec<_> = (0..=n as i64).map(|k| ratio(1, k + 1)).collect();
    product_coeffs(&vec![h; dim], n).unwrap()
}

fn solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_renewal");
    for (dim, n) in [(1, 40), (2, 10), (2, 16), (3, 8), (3, 12)] {
        let t = lebesgue(dim, n);
        g.bench_with_input(BenchmarkId::new(format!("d{dim}"), n), &t, |b, t| {
            b.iter(|| solve_renewal(black_box(t)).unwrap())
        });
    }
    g.finish();
}

fn checks(c: &mut Criterion) {
    let t = lebesgue(2, 10);
    c.bench_function("check_theorem1/d2/10", |b| b.iter(|| check_theorem1(black_box(&t)).unwrap()));
    c.bench_function("check_theorem2/d2/10", |b| b.iter(|| check_theorem2(black_box(&t)).unwrap()));
    c.bench_function("certify/d2/10", |b| b.iter(|| certify(black_box(&t)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_via_words");
    g.sample_size(10);
    for (dim, n) in [(2, 8), (3, 5)] {
        let t = lebesgue(dim, n);
        g.bench_with_input(BenchmarkId::new(format!("d{dim}"), n), &t, |b, t| {
            b.iter(|| solve_via_words(black_box(t)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, solve, checks, oracle);
criterion_main!(benches);
