//! Digit-product parity queries against exact big-integer evaluation.
//!
//! The digit evaluator answers `C_F(n,k) mod 2` in `O(log n)` mixed-radix
//! digit steps; the exact route builds triangle rows up to `n` first. The gap
//! widens quickly with `n`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fibfractal_core::congruence::lucas_fibonomial_mod2;
use fibfractal_core::exact::FibonomialRows;

fn exact_parity_query(n: u64, k: u64) -> u64 {
    let mut rows = FibonomialRows::new();
    for _ in 0..n {
        rows.next_row();
    }
    let row = rows.next_row();
    u64::try_from(&(&row[k as usize] % 2u32)).unwrap()
}

fn bench_parity(c: &mut Criterion) {
    let mut group = c.benchmark_group("fibonomial-parity");
    group.sample_size(10);

    for n in [64u64, 128, 256] {
        let k = n / 2;
        assert_eq!(
            exact_parity_query(n, k),
            lucas_fibonomial_mod2(n, k).value(),
            "methods disagree at ({n},{k})"
        );
        group.bench_with_input(BenchmarkId::new("exact", n), &n, |b, &n| {
            b.iter(|| exact_parity_query(black_box(n), black_box(n / 2)))
        });
        group.bench_with_input(BenchmarkId::new("digit", n), &n, |b, &n| {
            b.iter(|| lucas_fibonomial_mod2(black_box(n), black_box(n / 2)))
        });
    }

    // far beyond where the exact route is feasible
    for n in [10_000u64, 1_000_000] {
        group.bench_with_input(BenchmarkId::new("digit", n), &n, |b, &n| {
            b.iter(|| lucas_fibonomial_mod2(black_box(n), black_box(n / 2)))
        });
    }

    group.finish();
}

criterion_group!(benches, bench_parity);
criterion_main!(benches);
