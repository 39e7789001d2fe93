use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use plap::generate::gnm;
use plap::operator::apply;
use plap::reference::signed_c4;
use plap::{build_tensor_pair, find_eigenpairs, solve_max, MultistartConfig, PParam, SolverConfig};

fn bench_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply");
    let p = PParam::new(20.0).unwrap();
    for m in [10_000, 50_000, 250_000] {
        let g = gnm(1000, m, 1).unwrap();
        let f: Vec<f64> = (0..g.n()).map(|i| 1.0 + (i % 7) as f64 / 7.0).collect();
        group.throughput(Throughput::Elements(m as u64));
        group.bench_with_input(BenchmarkId::from_parameter(m), &g, |b, g| b.iter(|| apply(g, p, black_box(&f))));
    }
    group.finish();
}

fn bench_solve_max(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_max");
    group.sample_size(10);
    let p = PParam::new(20.0).unwrap();
    for m in [10_000, 50_000, 250_000] {
        let g = gnm(1000, m, 1).unwrap();
        group.throughput(Throughput::Elements(m as u64));
        group.bench_with_input(BenchmarkId::from_parameter(m), &g, |b, g| {
            b.iter(|| solve_max(g, p, &SolverConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_tensor_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor_apply");
    let g = gnm(200, 2000, 3).unwrap();
    let f: Vec<f64> = (0..g.n()).map(|i| (i as f64 * 0.37).sin()).collect();
    for p in [4.0, 10.0, 20.0] {
        let t = build_tensor_pair(&g, p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &t, |b, t| b.iter(|| t.tensor_apply(black_box(&f))));
    }
    group.finish();
}

fn bench_find_eigenpairs(c: &mut Criterion) {
    let g = signed_c4();
    let cfg = MultistartConfig { n_starts: 500, ..Default::default() };
    c.bench_function("find_eigenpairs/signed_c4_p4_500", |b| b.iter(|| find_eigenpairs(&g, 4.0, &cfg).unwrap()));
}

criterion_group!(benches, bench_apply, bench_solve_max, bench_tensor_apply, bench_find_eigenpairs);
criterion_main!(benches);
