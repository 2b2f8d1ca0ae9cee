use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tlgrowth_core::analysis::cross_validate;
use tlgrowth_core::growth::{automaton_for, classify_growth, hilbert_prefix};
use tlgrowth_core::{buchberger, build_presentation, ParameterMode, TwoColoredStar};

const GRAPHS: [&str; 4] = [
    "K(3; 1-2,1-3,2-3)",
    "K(4; 1-2,1-3,1-4,2-3,2-4,3-4)",
    "K(5; 1-2,2-3,4-5)",
    "K(6; 1-6,2-3,4-5)",
];

fn completion(c: &mut Criterion) {
    let mut group = c.benchmark_group("buchberger");
    for spec in GRAPHS {
        let g: TwoColoredStar = spec.parse().unwrap();
        let pres = build_presentation(&g, ParameterMode::Symbolic).unwrap();
        let bound = 2 * g.leaves() + 8;
        group.bench_with_input(BenchmarkId::from_parameter(spec), &pres, |b, p| {
            b.iter(|| buchberger(black_box(p), bound).unwrap())
        });
    }
    group.finish();
}

fn growth(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert_and_classify");
    for spec in GRAPHS {
        let g: TwoColoredStar = spec.parse().unwrap();
        let pres = build_presentation(&g, ParameterMode::Symbolic).unwrap();
        let gb = buchberger(&pres, 2 * g.leaves() + 8).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(spec), &gb, |b, gb| {
            b.iter(|| {
                let aut = automaton_for(gb, g.leaves() + 1);
                (classify_growth(&aut), hilbert_prefix(&aut, 60))
            })
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("cross_validate");
    group.sample_size(10);
    for n in [4, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| cross_validate(n, n, None, &ParameterMode::Symbolic).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, completion, growth, sweep);
criterion_main!(benches);
