use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mhgarside::{
    build_salvetti, covectors_from_hyperplanes, fixtures, make_context, presentation,
    verify_garside, FixtureData, FixtureId, Letter, PathOracle,
};
use mhgarside_bench::{completed, walk};

fn covectors(c: &mut Criterion) {
    let FixtureData::Hyperplanes(s4) = fixtures::load(FixtureId::S4) else {
        unreachable!()
    };
    c.bench_function("covectors S4", |b| {
        b.iter(|| covectors_from_hyperplanes(black_box(&s4)))
    });
}

fn normal_forms(c: &mut Criterion) {
    let (q, maps) = completed(FixtureId::S4);
    let ctx = make_context(&q, &maps).unwrap();
    let long = walk(&q, 0, 40, 3);
    c.bench_function("normal form S4 length 40", |b| {
        b.iter(|| ctx.from_path(black_box(&long)))
    });
    let f = ctx.from_path(&walk(&q, 5, 12, 2));
    let g = ctx.from_path(&walk(&q, 5, 12, 5));
    c.bench_function("meet S4 length 12", |b| {
        b.iter(|| ctx.meet(&f, &g).unwrap())
    });
    c.bench_function("join S4 length 12", |b| {
        b.iter(|| ctx.join(&f, &g).unwrap())
    });
}

fn word_problem(c: &mut Criterion) {
    let (q, maps) = completed(FixtureId::S4);
    let ctx = make_context(&q, &maps).unwrap();
    let sal = build_salvetti(&q).unwrap();
    let forward: Vec<Letter> = sal
        .lift(&walk(&q, 0, 30, 3))
        .into_iter()
        .map(|edge| Letter {
            edge,
            inverse: false,
        })
        .collect();
    let mut word = forward.clone();
    word.extend(forward.iter().rev().map(|l| l.inverted()));
    c.bench_function("trivial word S4 length 60", |b| {
        b.iter(|| ctx.is_trivial(&sal, 0, black_box(&word)).unwrap())
    });
    let short = &word[26..34];
    let start = mhgarside::garside::word_source(&sal, short).unwrap();
    c.bench_function("oracle word S4 length 8", |b| {
        b.iter(|| {
            PathOracle::new(&q, maps.clone())
                .word_element(&sal, start, black_box(short))
                .unwrap()
        })
    });
}

fn structure(c: &mut Criterion) {
    let (q, _) = completed(FixtureId::S4);
    let sal = build_salvetti(&q).unwrap();
    let full = presentation(&q, &sal).unwrap();
    c.bench_function("presentation reduce S4", |b| {
        b.iter(|| full.reduce(&sal, 0))
    });
    let (q3, maps3) = completed(FixtureId::I2(3));
    let ctx = make_context(&q3, &maps3).unwrap();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("I23 length 3", |b| b.iter(|| verify_garside(&ctx, 3)));
    group.finish();
}

criterion_group!(benches, covectors, normal_forms, word_problem, structure);
criterion_main!(benches);
