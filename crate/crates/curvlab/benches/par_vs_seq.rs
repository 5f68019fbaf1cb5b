//! Parallel vs sequential throughput on the three data-parallel hot paths:
//! ball enumeration, sphere censuses, and quadruple scans. The two code paths
//! produce byte-identical results; these benches measure the cost gap.
//!
//! With `--no-default-features` only the sequential path exists, so the
//! "par" benches then measure the fallback too.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use curvlab::cayley::{build_word_metric, BuildOptions};
use curvlab::curvature::curvature_census;
use curvlab::group::Preset;
use curvlab::hyperbolicity::{four_point_delta, DeltaMode};

fn opts(threads: usize) -> BuildOptions {
    BuildOptions {
        threads,
        ..BuildOptions::default()
    }
}

fn bench_ball_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball_build");
    group.sample_size(10);
    for (preset, radius) in [(Preset::SGamma, 6u32), (Preset::SNeg, 7u32)] {
        let (oracle, gens) = preset.oracle_and_gens().unwrap();
        let label = format!("{}-r{radius}", gens.label());
        group.bench_with_input(BenchmarkId::new("seq", &label), &radius, |b, &r| {
            b.iter(|| black_box(build_word_metric(&oracle, &gens, r, &opts(1)).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("par", &label), &radius, |b, &r| {
            b.iter(|| black_box(build_word_metric(&oracle, &gens, r, &opts(0)).unwrap()))
        });
    }
    group.finish();
}

fn bench_census(c: &mut Criterion) {
    let (oracle, gens) = Preset::SGamma.oracle_and_gens().unwrap();
    let table = build_word_metric(&oracle, &gens, 8, &opts(0)).unwrap();
    let seq_pool = rayon_pool(1);
    let mut group = c.benchmark_group("census_sphere6_k1");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| seq_pool.install(|| black_box(curvature_census(&table, 6, 1).unwrap())))
    });
    group.bench_function("par", |b| {
        b.iter(|| black_box(curvature_census(&table, 6, 1).unwrap()))
    });
    group.finish();
}

fn bench_delta(c: &mut Criterion) {
    let (oracle, gens) = Preset::SAlpha.oracle_and_gens().unwrap();
    let table = build_word_metric(&oracle, &gens, 3, &opts(0)).unwrap();
    let seq_pool = rayon_pool(1);
    let mut group = c.benchmark_group("four_point_delta_b3");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| {
            seq_pool
                .install(|| black_box(four_point_delta(&table, 3, DeltaMode::Exhaustive).unwrap()))
        })
    });
    group.bench_function("par", |b| {
        b.iter(|| black_box(four_point_delta(&table, 3, DeltaMode::Exhaustive).unwrap()))
    });
    group.finish();
}

fn rayon_pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
}

criterion_group!(benches, bench_ball_build, bench_census, bench_delta);
criterion_main!(benches);
