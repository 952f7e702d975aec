use criterion::{criterion_group, criterion_main, Criterion};
use horocalc_bench::{hexagon_cone, rank_five, wide_simplicial_cone};
use horocalc_core::catalog::{grassmannian_completion, quadric_completion};
use horocalc_core::roots::{Family, RootSystem};
use horocalc_core::stringy::{series_oracle, stringy_e, weighted_sr_poincare};
use std::hint::black_box;

fn roots(c: &mut Criterion) {
    c.bench_function("positive roots E8", |b| {
        b.iter(|| RootSystem::simple(black_box(Family::E), 8).unwrap())
    });
}

fn stringy(c: &mut Criterion) {
    let q = quadric_completion();
    let x = grassmannian_completion();
    let wide = wide_simplicial_cone();
    let hex = hexagon_cone();
    let d5 = rank_five();
    c.bench_function("stringy E complete quadric", |b| b.iter(|| stringy_e(black_box(&q)).unwrap()));
    c.bench_function("stringy E complete Grassmannian", |b| b.iter(|| stringy_e(black_box(&x)).unwrap()));
    c.bench_function("stringy E wide simplicial cone", |b| b.iter(|| stringy_e(black_box(&wide)).unwrap()));
    c.bench_function("stringy E hexagon cone", |b| b.iter(|| stringy_e(black_box(&hex)).unwrap()));
    c.bench_function("stringy E rank five", |b| b.iter(|| stringy_e(black_box(&d5)).unwrap()));
    c.bench_function("SR series complete quadric", |b| {
        b.iter(|| weighted_sr_poincare(black_box(&q)).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let x = grassmannian_completion();
    c.bench_function("oracle complete Grassmannian B=30", |b| {
        b.iter(|| series_oracle(black_box(&x), 30).unwrap())
    });
}

criterion_group!(benches, roots, stringy, oracle);
criterion_main!(benches);
