//! The `verify` subcommand: run a sweep, print a human-readable report with
//! every mismatch, and choose the exit code.

use std::process::ExitCode;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibfractal_core::congruence::{
    mod3_sign_experiment, verify_knuth_wilf, verify_lucf_dense, verify_lucf_pairs,
    verify_mod2_picture, verify_pascal_mod2, verify_self_similarity_mod2,
    verify_self_similarity_mod3, Mismatch, SignFit,
};
use fibfractal_core::exact;
use fibfractal_core::st_poly::{sweep_nu2_catalan, sweep_nu2_st_catalan};
use fibfractal_core::tilings::{
    enumerate_partitions_in_box, enumerate_rect_tilings, lattice_fixed_points, lattice_lemma_rhs,
    sagan_savage_count,
};
use num_bigint::BigUint;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    /// Mod-2 self-similarity of the Fibonomial triangle, levels 0..=m.
    Main,
    /// Mod-3 self-similarity (all three congruences plus symmetry).
    Mod3,
    /// Mod-2 self-similarity of Pascal's triangle.
    Pascal,
    /// Weighted tiling counts against Fibonomials.
    Ss,
    /// Lattice-path fixed points: closed form and parity.
    Lattice,
    /// Carry-counting 2-adic valuation against exact valuations.
    Kw,
    /// Digit-product parity: dense sweep plus random large pairs.
    Lucf,
    /// Catalan number valuations nu_2(C_n) = zeta_2(n+1) - 1.
    Nu2Catalan,
    /// Specialized (s,t)-Catalan valuations over four (s,t) pairs.
    Nu2StCatalan,
    /// Base-T digit-product sign experiment mod 3.
    Sign3,
}

const ST_PAIRS: [(i64, i64); 4] = [(1, 1), (3, 1), (1, 9), (5, 17)];

struct Outcome {
    cells: u64,
    mismatches: u64,
}

impl Outcome {
    fn merge(&mut self, label: &str, cells: u64, mismatches: &[Mismatch]) {
        println!("{label}: {cells} cells, {} mismatches", mismatches.len());
        for m in mismatches {
            println!(
                "  ({}, {}): expected {}, got {}",
                m.n, m.k, m.expected, m.got
            );
        }
        self.cells += cells;
        self.mismatches += mismatches.len() as u64;
    }
}

pub fn run(which: VerifyKind, level: Option<u32>, n_max: Option<u64>) -> ExitCode {
    let mut outcome = Outcome {
        cells: 0,
        mismatches: 0,
    };
    match which {
        VerifyKind::Main => {
            for m in 0..=level.unwrap_or(4) {
                let r = verify_self_similarity_mod2(m);
                outcome.merge(&format!("mod 2 level {m}"), r.cells_checked, &r.mismatches);
                let p = verify_mod2_picture(m);
                outcome.merge(
                    &format!("mod 2 level {m} picture"),
                    p.cells_checked,
                    &p.mismatches,
                );
            }
        }
        VerifyKind::Mod3 => {
            for m in 0..=level.unwrap_or(2) {
                let r = verify_self_similarity_mod3(m);
                outcome.merge(&format!("mod 3 level {m}"), r.cells_checked, &r.mismatches);
            }
        }
        VerifyKind::Pascal => {
            for m in 0..=level.unwrap_or(8) {
                let r = verify_pascal_mod2(m);
                outcome.merge(&format!("pascal level {m}"), r.cells_checked, &r.mismatches);
            }
        }
        VerifyKind::Ss => {
            let n_max = n_max.unwrap_or(12);
            let mut mismatches = Vec::new();
            let mut cells = 0;
            for n in 0..=n_max {
                for k in 0..=n {
                    cells += 1;
                    let expected = exact::fibonomial(n, k as i64);
                    if sagan_savage_count(n, k) != expected {
                        mismatches.push((n, k, "product"));
                    }
                    if n <= 8 {
                        let explicit: u64 = enumerate_partitions_in_box(k, n - k)
                            .iter()
                            .map(|bp| enumerate_rect_tilings(bp).len() as u64)
                            .sum();
                        if BigUint::from(explicit) != expected {
                            mismatches.push((n, k, "enumeration"));
                        }
                    }
                }
            }
            println!(
                "tiling counts to n = {n_max}: {cells} cells, {} mismatches",
                mismatches.len()
            );
            for (n, k, which) in &mismatches {
                println!("  ({n}, {k}): {which} disagrees with the Fibonomial");
            }
            outcome.cells += cells;
            outcome.mismatches += mismatches.len() as u64;
        }
        VerifyKind::Lattice => {
            let n_max = n_max.unwrap_or(60);
            let mut mismatches = Vec::new();
            let mut cells = 0;
            for n in 0..=n_max {
                for k in 0..=n {
                    cells += 1;
                    let fp = lattice_fixed_points(n, k);
                    if fp != lattice_lemma_rhs(n, k) {
                        mismatches.push((n, k, "closed form"));
                    }
                    let parity = &fp % 2u32;
                    if parity != exact::fibonomial(n, k as i64) % 2u32 {
                        mismatches.push((n, k, "parity"));
                    }
                }
            }
            println!(
                "lattice fixed points to n = {n_max}: {cells} cells, {} mismatches",
                mismatches.len()
            );
            for (n, k, which) in &mismatches {
                println!("  ({n}, {k}): {which} disagrees");
            }
            outcome.cells += cells;
            outcome.mismatches += mismatches.len() as u64;
        }
        VerifyKind::Kw => {
            let r = verify_knuth_wilf(n_max.unwrap_or(300));
            outcome.merge("carry-count valuations", r.cells_checked, &r.mismatches);
        }
        VerifyKind::Lucf => {
            let n_max = n_max.unwrap_or(1_000_000);
            let dense = verify_lucf_dense(n_max.min(300));
            outcome.merge("digit parity dense", dense.cells_checked, &dense.mismatches);
            if n_max > 300 {
                let mut rng = ChaCha8Rng::seed_from_u64(0xF1B0);
                let pairs: Vec<(u64, u64)> = (0..10_000)
                    .map(|_| {
                        let n = rng.gen_range(0..=n_max);
                        (n, rng.gen_range(0..=n))
                    })
                    .collect();
                let random = verify_lucf_pairs(&pairs);
                outcome.merge(
                    &format!("digit parity random to {n_max}"),
                    random.cells_checked,
                    &random.mismatches,
                );
            }
        }
        VerifyKind::Nu2Catalan => {
            let checks = sweep_nu2_catalan(n_max.unwrap_or(1000));
            let bad: Vec<_> = checks.iter().filter(|c| !c.ok()).collect();
            println!(
                "Catalan valuations to n = {}: {} values, {} mismatches",
                checks.len() - 1,
                checks.len(),
                bad.len()
            );
            for c in &bad {
                println!("  n = {}: claimed {}, actual {}", c.n, c.claimed, c.actual);
            }
            outcome.cells += checks.len() as u64;
            outcome.mismatches += bad.len() as u64;
        }
        VerifyKind::Nu2StCatalan => {
            let n_max = n_max.unwrap_or(60);
            match sweep_nu2_st_catalan(n_max, &ST_PAIRS) {
                Ok(rows) => {
                    let bad: Vec<_> = rows.iter().filter(|r| !r.ok()).collect();
                    println!(
                        "(s,t)-Catalan valuations to n = {n_max} over {:?}: {} checks, {} mismatches",
                        ST_PAIRS,
                        rows.len(),
                        bad.len()
                    );
                    for r in &bad {
                        println!(
                            "  n = {}, (s,t) = ({}, {}): claimed {}, actual {}",
                            r.n, r.s, r.t, r.claimed, r.actual
                        );
                    }
                    outcome.cells += rows.len() as u64;
                    outcome.mismatches += bad.len() as u64;
                }
                Err(e) => {
                    println!("(s,t)-Catalan valuations failed: {e}");
                    outcome.mismatches += 1;
                }
            }
        }
        VerifyKind::Sign3 => {
            let n_max = n_max.unwrap_or(40);
            let rows = mod3_sign_experiment(n_max);
            let mut plus = 0u64;
            let mut minus = 0u64;
            let mut both = 0u64;
            let mut neither = Vec::new();
            for row in &rows {
                match row.fit {
                    SignFit::Plus => plus += 1,
                    SignFit::Minus => minus += 1,
                    SignFit::Both => both += 1,
                    SignFit::Neither => neither.push(row),
                }
            }
            println!(
                "base-T sign experiment to n = {n_max}: {} cells ({plus} plus, {minus} minus, {both} zero-both, {} neither)",
                rows.len(),
                neither.len()
            );
            for row in &neither {
                println!(
                    "  ({}, {}): residue {} vs digit product {}",
                    row.n, row.k, row.lhs, row.digit_product
                );
            }
            outcome.cells += rows.len() as u64;
            outcome.mismatches += neither.len() as u64;
        }
    }
    if outcome.mismatches == 0 {
        println!("verified: {} cells, zero mismatches", outcome.cells);
        ExitCode::SUCCESS
    } else {
        println!(
            "FAILED: {} mismatches over {} cells",
            outcome.mismatches, outcome.cells
        );
        ExitCode::from(1)
    }
}
