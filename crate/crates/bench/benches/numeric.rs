use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gbt_core::spectra::{main_spectrum_numeric, symmetric_eigen, walk_matrix_rank};
use gbt_core::{build_tree, DegreeSequence, SpectraConfig};

fn eigen(c: &mut Criterion) {
    let cfg = SpectraConfig::default();
    let mut group = c.benchmark_group("symmetric_eigen");
    group.sample_size(20);
    for s in ["3,3,2", "5,3,5,3,2", "4,4,4,4"] {
        let a = build_tree(&s.parse::<DegreeSequence>().unwrap())
            .unwrap()
            .adjacency()
            .to_dense();
        group.bench_with_input(BenchmarkId::new(s, a.nrows()), &a, |b, a| {
            b.iter(|| symmetric_eigen(black_box(a), &cfg).unwrap())
        });
    }
    group.finish();
}

fn main_spectrum(c: &mut Criterion) {
    let cfg = SpectraConfig::default();
    let a = build_tree(&"5,3,5,3,2".parse().unwrap())
        .unwrap()
        .adjacency()
        .to_dense();
    let mut group = c.benchmark_group("n=216");
    group.sample_size(20);
    group.bench_function("main_spectrum_numeric", |b| {
        b.iter(|| main_spectrum_numeric(black_box(&a), &cfg).unwrap())
    });
    group.bench_function("walk_matrix_rank", |b| {
        b.iter(|| walk_matrix_rank(black_box(&a), &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eigen, main_spectrum);
criterion_main!(benches);
