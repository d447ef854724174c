//! Parallel against sequential execution of the two workload shapes in this
//! crate: fine-grained triangle row construction and coarse per-n sweeps.
//!
//! Row construction splits each row's cells across threads; the cells are
//! individually cheap, so the pool only pays off once rows run to around a
//! thousand entries (the library's auto policy engages it there). Per-n
//! sweeps hand whole subproblems to the pool and scale from the start. Built
//! with `--no-default-features` everything runs sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fibfractal_core::st_poly::check_nu2_catalan;
use fibfractal_core::triangle::{TriangleGrid, TriangleKind};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn bench_grid_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("triangle-build");
    group.sample_size(10);

    for rows in [256u64, 1024] {
        group.bench_with_input(BenchmarkId::new("sequential", rows), &rows, |b, &rows| {
            b.iter(|| TriangleGrid::build_with(TriangleKind::Fibonomial, black_box(rows), 2, false))
        });
        group.bench_with_input(BenchmarkId::new("parallel", rows), &rows, |b, &rows| {
            b.iter(|| TriangleGrid::build_with(TriangleKind::Fibonomial, black_box(rows), 2, true))
        });
    }

    group.finish();
}

fn bench_valuation_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalan-valuation-sweep");
    group.sample_size(10);

    let n = 600u64;
    group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
        b.iter(|| {
            (0..=n)
                .map(|i| check_nu2_catalan(black_box(i)))
                .collect::<Vec<_>>()
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
        b.iter(|| {
            (0..=n)
                .into_par_iter()
                .map(|i| check_nu2_catalan(black_box(i)))
                .collect::<Vec<_>>()
        })
    });

    group.finish();
}

criterion_group!(benches, bench_grid_build, bench_valuation_sweep);
criterion_main!(benches);
