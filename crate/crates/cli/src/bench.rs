//! The `bench` subcommand: random-pair agreement between the digit-product
//! evaluator and exact arithmetic, then wall-clock comparison.
//!
//! Agreement is checked on every pair against exact 2-adic Fibotorial
//! valuations (feasible at any n), and additionally against the full
//! big-integer value on the pairs below the exact cap. Exact arithmetic is
//! only *timed* below the cap, since its cost explodes with n; the digit
//! evaluator is timed on everything.

use std::fmt;
use std::hint::black_box;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibfractal_core::congruence::{lucas_fibonomial_mod2, verify_lucf_pairs};
use fibfractal_core::exact::FibonomialRows;

fn exact_parity(n: u64, k: u64) -> u64 {
    let mut rows = FibonomialRows::new();
    for _ in 0..n {
        rows.next_row();
    }
    u64::try_from(&(&rows.next_row()[k as usize] % 2u32)).expect("parity")
}

struct MethodTiming {
    calls: usize,
    largest_n: u64,
    total: Duration,
}

impl MethodTiming {
    fn per_call(&self) -> f64 {
        self.total.as_secs_f64() / self.calls.max(1) as f64
    }
}

/// Timing report; only constructed once both methods have agreed on every
/// checked pair.
struct BenchReport {
    n_max: u64,
    pairs_checked: usize,
    full_integer_checks: usize,
    agreement: bool,
    digit: MethodTiming,
    exact: Option<MethodTiming>,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "agreement: {} on {} pairs with n <= {} (valuation oracle), {} re-checked with full integers",
            if self.agreement { "ok" } else { "FAILED" },
            self.pairs_checked,
            self.n_max,
            self.full_integer_checks,
        )?;
        writeln!(
            f,
            "digit evaluator : {} calls in {:?} ({:.3e} s/call), n up to {}",
            self.digit.calls,
            self.digit.total,
            self.digit.per_call(),
            self.digit.largest_n,
        )?;
        match &self.exact {
            None => writeln!(
                f,
                "exact arithmetic: no pairs at or below the cap; raise --exact-cap to time it"
            ),
            Some(exact) => {
                writeln!(
                    f,
                    "exact arithmetic: {} calls in {:?} ({:.3e} s/call), n up to {}",
                    exact.calls,
                    exact.total,
                    exact.per_call(),
                    exact.largest_n,
                )?;
                writeln!(
                    f,
                    "speedup: {:.1}x (digit vs exact, at the exact sample's scale)",
                    exact.per_call() / self.digit.per_call()
                )
            }
        }
    }
}

pub fn run(n_max: u64, trials: u64, exact_cap: u64, seed: u64) -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u64, u64)> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(0..=n_max);
            (n, rng.gen_range(0..=n))
        })
        .collect();

    // agreement gate: every pair against the valuation oracle
    let report = verify_lucf_pairs(&pairs);
    if !report.verified() {
        println!("agreement FAILED on {} pairs:", report.mismatches.len());
        for m in &report.mismatches {
            println!(
                "  ({}, {}): expected {}, got {}",
                m.n, m.k, m.expected, m.got
            );
        }
        return ExitCode::from(1);
    }

    // and against full big integers where that is affordable
    let exact_pairs: Vec<(u64, u64)> = pairs
        .iter()
        .copied()
        .filter(|&(n, _)| n <= exact_cap)
        .collect();
    for &(n, k) in &exact_pairs {
        let exact = exact_parity(n, k);
        let fast = lucas_fibonomial_mod2(n, k).value();
        if exact != fast {
            println!("agreement FAILED at ({n}, {k}): exact {exact}, digit {fast}");
            return ExitCode::from(1);
        }
    }

    // timing: digit evaluator over everything
    let start = Instant::now();
    for &(n, k) in &pairs {
        black_box(lucas_fibonomial_mod2(black_box(n), black_box(k)));
    }
    let digit = MethodTiming {
        calls: pairs.len(),
        largest_n: pairs.iter().map(|&(n, _)| n).max().unwrap_or(0),
        total: start.elapsed(),
    };

    // timing: exact arithmetic below the cap
    let timed: Vec<(u64, u64)> = exact_pairs.iter().copied().take(16).collect();
    let exact = (!timed.is_empty()).then(|| {
        let start = Instant::now();
        for &(n, k) in &timed {
            black_box(exact_parity(black_box(n), black_box(k)));
        }
        MethodTiming {
            calls: timed.len(),
            largest_n: timed.iter().map(|&(n, _)| n).max().unwrap_or(0),
            total: start.elapsed(),
        }
    });

    print!(
        "{}",
        BenchReport {
            n_max,
            pairs_checked: pairs.len(),
            full_integer_checks: exact_pairs.len(),
            agreement: true,
            digit,
            exact,
        }
    );
    ExitCode::SUCCESS
}
