use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use weyl_bench::{gaussian, lognormal, two_point, uniform, Z};
use weyl_core::{
    boundary_samples, classical_moments, gap_circles, hamburger_region, interval_region, kernel_det, kernels_at,
    multi_gap_region, orthonormal_system, relation_residuals, stieltjes_region, Family, KernelKind,
};

fn orthonormal(c: &mut Criterion) {
    let mut group = c.benchmark_group("orthonormal_system");
    for n in [2, 6, 12] {
        let s = classical_moments(Family::Gaussian, 2 * n + 1).unwrap();
        group.bench_with_input(BenchmarkId::new("gaussian", n), &n, |b, &n| {
            b.iter(|| orthonormal_system(black_box(&s), n).unwrap())
        });
    }
    let s = classical_moments(Family::Lognormal, 7).unwrap();
    group.bench_function("lognormal/3", |b| b.iter(|| orthonormal_system(black_box(&s), 3).unwrap()));
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let w = Complex64::new(0.5, -0.25);
    let mut group = c.benchmark_group("kernels");
    for n in [2, 8] {
        let sys = gaussian(n + 1);
        group.bench_with_input(BenchmarkId::new("sum", n), &n, |b, &n| {
            b.iter(|| kernels_at(&sys, n, black_box(Z), black_box(w)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("det", n), &n, |b, &n| {
            b.iter(|| kernel_det(&sys, KernelKind::D, n, black_box(Z), black_box(w)).unwrap())
        });
    }
    let sys = gaussian(4);
    let quads: Vec<[Complex64; 4]> = (0..100)
        .map(|k| {
            let t = k as f64 * 0.1;
            [
                Complex64::new(t.cos(), t.sin()),
                Complex64::new(-t.sin(), 0.5),
                Complex64::new(0.3, t.cos()),
                Complex64::new(t.sin(), -1.0),
            ]
        })
        .collect();
    group.bench_function("relations/100", |b| b.iter(|| relation_residuals(&sys, 4, black_box(&quads)).unwrap()));
    group.finish();
}

fn regions(c: &mut Criterion) {
    let mut group = c.benchmark_group("region");
    let g = gaussian(4);
    group.bench_function("hamburger", |b| b.iter(|| hamburger_region(&g, 4, black_box(Z)).unwrap()));
    let ln = lognormal(3);
    group.bench_function("hamburger/lognormal", |b| b.iter(|| hamburger_region(&ln, 3, black_box(Z)).unwrap()));
    group.bench_function("stieltjes", |b| b.iter(|| stieltjes_region(&g, 4, black_box(Z), -3.0).unwrap()));
    let u = uniform(4);
    group.bench_function("interval/even", |b| b.iter(|| interval_region(&u, 6, black_box(Z), 0.0, 1.0).unwrap()));
    group.bench_function("interval/odd", |b| b.iter(|| interval_region(&u, 7, black_box(Z), 0.0, 1.0).unwrap()));
    let tp = two_point();
    group.bench_function("gap", |b| b.iter(|| gap_circles(&tp, 1, black_box(Z), -1.0, 1.0).unwrap()));
    let gaps = [(-3.0, -2.5), (-1.0, -0.5), (0.5, 1.0)];
    group.bench_function("multigap/3", |b| b.iter(|| multi_gap_region(&g, 4, black_box(Z), &gaps).unwrap()));
    let region = hamburger_region(&g, 4, Z).unwrap();
    group.bench_function("boundary/64", |b| b.iter(|| boundary_samples(black_box(&region), 64).unwrap()));
    group.finish();
}

criterion_group!(benches, orthonormal, kernels, regions);
criterion_main!(benches);
