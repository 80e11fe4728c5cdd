use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use socc::oracles::{random_anchor, regular_oracle, OracleConfig};
use socc::*;

fn closed_forms(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("membership");
    for case in CaseTag::ALL {
        let pair = random_anchor(case, 4, 1).unwrap();
        let cand = sample_regular_normal(&pair, 2, 1).pop().unwrap();
        g.bench_with_input(BenchmarkId::new("regular", case.name()), &pair, |b, p| {
            b.iter(|| regular_normal_contains(black_box(p), black_box(&cand), &tol))
        });
        g.bench_with_input(BenchmarkId::new("limiting", case.name()), &pair, |b, p| {
            b.iter(|| limiting_normal_contains(black_box(p), black_box(&cand), &tol))
        });
    }
    g.finish();
}

fn origin_solver(c: &mut Criterion) {
    let tol = Tolerances::default();
    let u = SocVector::new(vec![1.0, -1.0, 1.0]).unwrap();
    let v = SocVector::new(vec![0.0, 0.0, 1.0]).unwrap();
    c.bench_function("solve_origin_branch/m=3", |b| {
        b.iter(|| solve_origin_branch(black_box(&u), black_box(&v), &tol))
    });
}

fn oracle(c: &mut Criterion) {
    let pair = random_anchor(CaseTag::BdBd, 3, 1).unwrap();
    let cand = sample_regular_normal(&pair, 2, 1).pop().unwrap();
    let cfg = OracleConfig::default();
    let mut g = c.benchmark_group("oracle");
    g.sample_size(20);
    g.bench_function("regular/BdBd", |b| {
        b.iter(|| regular_oracle(black_box(&pair), black_box(&cand), &cfg))
    });
    g.finish();
}

criterion_group!(benches, closed_forms, origin_solver, oracle);
criterion_main!(benches);
