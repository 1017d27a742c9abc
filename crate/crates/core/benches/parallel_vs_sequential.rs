use blowup_core::divisors::{strnorm_surface, FactoredDivisor};
use blowup_core::par;
use blowup_core::resolve::{resolve_batch, DEFAULT_MAX_STEPS};
use blowup_core::singularity::jacobian_ideal;
use blowup_core::poly::parse_polynomial;
use blowup_core::{Ideal, PolyRing, Polynomial, QuotientPresentation};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const CURVES: &[&str] = &[
    "y^2 - x^3",
    "y^2 - x^3 - x^2",
    "y^2 - x^4",
    "y^2 - x^5",
    "y^3 - x^4",
    "y^3 - x^5",
    "x^2*y - x*y^2",
    "x^3 + y^3 - 3*x*y",
];

fn modes() -> [(&'static str, bool); 2] {
    [("sequential", false), ("parallel", true)]
}

fn batch_resolution(c: &mut Criterion) {
    let ring = PolyRing::grevlex(["x", "y"]).unwrap();
    let curves: Vec<Polynomial> = CURVES.iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
    let mut group = c.benchmark_group("resolve_batch");
    group.sample_size(10);
    for (name, on) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &on, |b, &on| {
            par::set_enabled(on);
            b.iter(|| resolve_batch(&curves, DEFAULT_MAX_STEPS));
        });
    }
    group.finish();
    par::set_enabled(true);
}

fn jacobian_subsets(c: &mut Criterion) {
    let ring = PolyRing::grevlex(["x", "y", "z", "w"]).unwrap();
    let rel = Ideal::parse(&ring, &["y - x^2", "z - x*y", "w - x*z", "y^2 - x*z"]).unwrap();
    let p = QuotientPresentation::new(rel);
    let mut group = c.benchmark_group("jacobian_ideal");
    group.sample_size(10);
    for (name, on) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &on, |b, &on| {
            par::set_enabled(on);
            b.iter(|| jacobian_ideal(&p).unwrap());
        });
    }
    group.finish();
    par::set_enabled(true);
}

fn normalization_leaves(c: &mut Criterion) {
    let ring = PolyRing::grevlex(["x", "y"]).unwrap();
    let factors = ["y^2 - x^3", "x", "y - x"].iter().map(|s| (parse_polynomial(&ring, s).unwrap(), 1)).collect();
    let d = FactoredDivisor::new(QuotientPresentation::polynomial_ring(&ring), factors).unwrap();
    let mut group = c.benchmark_group("strnorm_surface");
    group.sample_size(10);
    for (name, on) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &on, |b, &on| {
            par::set_enabled(on);
            b.iter(|| strnorm_surface(&d, 16).unwrap());
        });
    }
    group.finish();
    par::set_enabled(true);
}

criterion_group!(benches, batch_resolution, jacobian_subsets, normalization_leaves);
criterion_main!(benches);
