use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use threeway_bench::{generate, Shape};
use threeway_core::complete::{description_regions_complete, regions_computational};
use threeway_core::language::DEFAULT_MAX_FORMULAS;
use threeway_core::satisfiability::description_regions_confidence;
use threeway_core::similarity::{description_regions_alpha_sim, similarity_matrix};
use threeway_core::{enumerate_cdl, Degree, Mode, ObjectSet, TNormKind, Universe};

fn incomplete(objects: usize) -> Shape {
    Shape { objects, attributes: 5, domain: 3, unknown: 150, disjunctive: 100 }
}

/// Every third object, so the class is neither trivial nor aligned with any attribute.
fn class(universe: &Universe) -> ObjectSet {
    universe.ids().step_by(3).collect()
}

fn similarity(c: &mut Criterion) {
    let mut group = c.benchmark_group("similarity_matrix");
    for n in [20, 80] {
        let st = generate(incomplete(n), 11).to_set_valued().unwrap();
        let attrs = st.schema().all();
        for kind in [TNormKind::Min, TNormKind::Product] {
            group.bench_with_input(BenchmarkId::new(kind.name(), n), &st, |b, st| {
                b.iter(|| similarity_matrix(black_box(st), &attrs, kind))
            });
        }
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let st = generate(incomplete(10), 3).to_set_valued().unwrap();
    let attrs = st.schema().all();
    c.bench_function("enumerate_cdl/5x3", |b| {
        b.iter(|| enumerate_cdl(st.schema(), black_box(&attrs), Mode::Strict, DEFAULT_MAX_FORMULAS).unwrap())
    });
}

fn complete_regions(c: &mut Criterion) {
    let mut group = c.benchmark_group("complete");
    for n in [100, 1000] {
        let t = generate(Shape::complete(n, 4, 3), 5).to_set_valued().unwrap().to_complete().unwrap();
        let attrs = t.schema().all();
        let x = class(t.universe());
        group.bench_with_input(BenchmarkId::new("equivalence", n), &t, |b, t| {
            b.iter(|| regions_computational(black_box(t), &attrs, &x).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("definable", n), &t, |b, t| {
            b.iter(|| description_regions_complete(black_box(t), &attrs, &x, DEFAULT_MAX_FORMULAS).unwrap())
        });
    }
    group.finish();
}

fn incomplete_regions(c: &mut Criterion) {
    let mut group = c.benchmark_group("incomplete");
    group.sample_size(20);
    let n = 30;
    let st = generate(incomplete(n), 17).to_set_valued().unwrap();
    let attrs = st.schema().all();
    let x = class(st.universe());
    let alpha = Degree::ratio(1, 2);
    group.bench_function("alpha_sim", |b| {
        b.iter(|| {
            description_regions_alpha_sim(black_box(&st), &attrs, &alpha, &x, TNormKind::Min, DEFAULT_MAX_FORMULAS)
                .unwrap()
        })
    });
    group.bench_function("confidence", |b| {
        b.iter(|| {
            description_regions_confidence(black_box(&st), &attrs, &alpha, &x, TNormKind::Product, DEFAULT_MAX_FORMULAS)
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, similarity, enumeration, complete_regions, incomplete_regions);
criterion_main!(benches);
