use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kfs_core::factor::factor_by_matching;
use kfs_core::spectral::DEFAULT_TOL;
use kfs_core::verify::sample_graph;
use kfs_core::{build_gnk, graph6, has_k_factor, rho, search_certificate, GnkParams};

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("rho");
    for n in [20, 50, 80] {
        let g = build_gnk(GnkParams { n, k: 3 }).unwrap();
        group.bench_with_input(BenchmarkId::new("gnk_k3", n), &g, |b, g| {
            b.iter(|| rho(black_box(g), DEFAULT_TOL))
        });
    }
    group.finish();
}

fn factor(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    for n in [10, 13] {
        let g = sample_graph(n, 0.6, 1, 0);
        group.bench_with_input(BenchmarkId::new("search_k2", n), &g, |b, g| {
            b.iter(|| search_certificate(black_box(g), 2))
        });
        group.bench_with_input(BenchmarkId::new("matching_k2", n), &g, |b, g| {
            b.iter(|| factor_by_matching(black_box(g), 2))
        });
    }
    let g = build_gnk(GnkParams { n: 60, k: 4 }).unwrap();
    group.bench_function("has_k_factor_gnk_60_4", |b| {
        b.iter(|| has_k_factor(black_box(&g), 4))
    });
    group.finish();
}

fn codec(c: &mut Criterion) {
    let g = sample_graph(60, 0.5, 2, 0);
    let text = graph6::encode(&g);
    c.bench_function("graph6_encode_60", |b| {
        b.iter(|| graph6::encode(black_box(&g)))
    });
    c.bench_function("graph6_decode_60", |b| {
        b.iter(|| graph6::decode(black_box(text.as_bytes())))
    });
}

criterion_group!(benches, spectral, factor, codec);
criterion_main!(benches);
