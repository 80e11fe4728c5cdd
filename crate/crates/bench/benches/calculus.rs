use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use socc::*;

fn outside_point(m: usize) -> SocVector {
    let tail = vec![1.0 / ((m - 1) as f64).sqrt(); m - 1];
    SocVector::from_parts(0.3, &tail).unwrap()
}

fn projection(c: &mut Criterion) {
    let mut g = c.benchmark_group("projection");
    for m in [3, 10, 100] {
        let x = outside_point(m);
        let h = SocVector::new((0..m).map(|i| (i as f64).sin()).collect()).unwrap();
        g.bench_with_input(BenchmarkId::new("project_soc", m), &x, |b, x| {
            b.iter(|| project_soc(black_box(x)))
        });
        g.bench_with_input(BenchmarkId::new("dir_derivative", m), &x, |b, x| {
            b.iter(|| dir_derivative(black_box(x), black_box(&h)))
        });
        g.bench_with_input(BenchmarkId::new("jacobian", m), &x, |b, x| {
            b.iter(|| jacobian(black_box(x)))
        });
    }
    g.finish();
}

fn calmness(c: &mut Criterion) {
    let x = SocVector::new(vec![1.0, 1.0, 0.0]).unwrap();
    let h = SocVector::new(vec![0.6, -0.8, 0.0]).unwrap();
    let scales = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
    c.bench_function("calmness_report/m=3", |b| {
        b.iter(|| calmness_report(black_box(&x), black_box(&h), &scales))
    });
}

criterion_group!(benches, projection, calmness);
criterion_main!(benches);
