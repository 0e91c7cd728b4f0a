//! End-to-end timings for the three hot paths: canonical forms, wood
//! enumeration, and the full three-grade subtraction recursion.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use renorm_core::graph::DegreeFunction;
use renorm_core::hopf::Session;
use renorm_core::renorm::{bogoliubov, random_character_for};
use renorm_core::{corpus, SubtractionScheme};

fn bench_canonical_forms(c: &mut Criterion) {
    let graphs = corpus::all();
    c.bench_function("canonical_key/corpus", |b| {
        b.iter(|| {
            for (_, g) in &graphs {
                black_box(g.canonical_key());
            }
        })
    });
}

fn bench_wood_enumeration(c: &mut Criterion) {
    let graphs = corpus::all();
    c.bench_function("wood/corpus", |b| {
        b.iter(|| {
            for (_, g) in &graphs {
                black_box(g.wood().expect("corpus graphs have woods"));
            }
        })
    });
}

fn bench_subtraction_recursion(c: &mut Criterion) {
    let session = Session::with_corpus(3).expect("corpus closes");
    let scheme = SubtractionScheme::Jet(DegreeFunction::Minimal);
    let phi = random_character_for(&session, &scheme, 3, 2024).expect("character");
    c.bench_function("bogoliubov/grade3", |b| {
        b.iter(|| black_box(bogoliubov(&phi, &scheme, &session, 3).expect("recursion runs")))
    });
}

criterion_group!(
    benches,
    bench_canonical_forms,
    bench_wood_enumeration,
    bench_subtraction_recursion
);
criterion_main!(benches);
