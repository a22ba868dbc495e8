use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use purgatory_bench::{all_ones, planted, random_instance};
use purgatory_core::reduction::reduce;
use purgatory_core::solver::{solve, verify_certificate};

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for n in [1_000usize, 100_000, 1_000_000] {
        group.throughput(Throughput::Elements(n as u64));
        let p = planted(n);
        group.bench_with_input(BenchmarkId::new("planted", n), &p, |b, p| b.iter(|| solve(black_box(p))));
        let p = all_ones(n);
        group.bench_with_input(BenchmarkId::new("all_ones", n), &p, |b, p| b.iter(|| solve(black_box(p))));
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let p = all_ones(1_000_000);
    let cert = solve(&p).certificate.unwrap();
    c.bench_function("verify_certificate/all_ones/1000000", |b| {
        b.iter(|| verify_certificate(|j| p.values()[j - 1], p.n(), black_box(cert.steps()).iter().copied()))
    });
}

fn bench_reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    for n in [1_000usize, 10_000] {
        let inst = random_instance(n, n + n / 2);
        group.bench_with_input(BenchmarkId::new("reduce", n), &inst, |b, i| b.iter(|| reduce(black_box(i))));
        let red = reduce(&inst);
        group.bench_with_input(BenchmarkId::new("solve_reduced", n), &red.puzzle, |b, p| b.iter(|| solve(black_box(p))));
    }
    group.finish();
}

criterion_group!(benches, bench_solve, bench_verify, bench_reduce);
criterion_main!(benches);
