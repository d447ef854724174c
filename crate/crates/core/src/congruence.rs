//! Digit- and carry-based congruence machinery.
//!
//! Classical results first: Lucas' digit-product congruence for binomials
//! modulo a prime and Kummer's carry-counting formula for their p-adic
//! valuations. Their Fibonomial counterparts follow: the 2-adic valuation of
//! `C_F(m+n, m)` by carry counting in the addition `(m/3)_2 + (n/3)_2`
//! ([`knuth_wilf_nu2_fibonomial`]), the digit-product evaluation of
//! `C_F(n,k) mod 2` over base-F expansions ([`lucas_fibonomial_mod2`]), and a
//! recursive-descent evaluator for `C_F(n,k) mod 3` ([`fibonomial_mod3_fast`]).
//! Both fast evaluators run in `O(log n)` digit operations.
//!
//! The `verify_*` functions check the self-similarity congruences of the
//! Fibonomial triangle (period `3*2^m` modulo 2, period `4*3^m` modulo 3 with
//! sign twists, and Pascal's triangle with period `2^m`) cell by cell against
//! exact arithmetic, reporting every mismatch instead of stopping at the
//! first.

use std::fmt;

use num_bigint::BigUint;

use crate::exact::{self, FibonomialRows, FibotorialValuations};
use crate::radix::{expand, MixedRadixBase};
use crate::triangle::{TriangleGrid, TriangleKind};

/// A residue class `value (mod modulus)` with `value` kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Balanced representative in `(-modulus/2, modulus/2]`; modulo 3 this
    /// maps 2 to -1, matching the signed triangle displays.
    pub fn balanced(self) -> i64 {
        if 2 * self.value > self.modulus {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `C(n, k) mod p` by Lucas' theorem: the product of the digit binomials
/// `C(n_i, k_i)` over base-p expansions. Intended for small primes.
pub fn lucas_binomial_mod_p(n: u64, k: u64, p: u64) -> Residue {
    assert!(p >= 2, "p must be prime");
    let mut n = n;
    let mut k = k;
    let mut acc = 1u64;
    while (n > 0 || k > 0) && acc != 0 {
        let (nd, kd) = (n % p, k % p);
        let digit = exact::binomial(nd, kd as i64) % p;
        acc = acc * u64::try_from(&digit).expect("digit binomial residue fits u64") % p;
        n /= p;
        k /= p;
    }
    Residue::new(acc, p)
}

/// `nu_p(C(m+n, m))` by Kummer's theorem: the number of carries when adding
/// `m` and `n` in base p.
pub fn kummer_nu(m: u64, n: u64, p: u64) -> u64 {
    assert!(p >= 2, "p must be prime");
    let (mut a, mut b) = (m, n);
    let mut carry = 0u64;
    let mut count = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry;
        a /= p;
        b /= p;
    }
    count
}

/// `nu_2(C_F(m+n, m))` without big integers, by counting carries in the
/// binary addition `(m/3)_2 + (n/3)_2`.
///
/// Write `m = 3q1 + r1` and `n = 3q2 + r2`. Carries strictly right of the
/// radix point are not counted; the fractional parts contribute exactly one
/// counted carry into the ones place when `r1 + r2 >= 3` (this includes the
/// boundary case `r1 + r2 = 3`, where `1/3 + 2/3` reaches the radix point
/// exactly). The integer parts `q1 + q2` are then added with that incoming
/// carry, counting every carry, plus one extra if a carry leaves the ones
/// place. Validated exhaustively against exact valuations.
pub fn knuth_wilf_nu2_fibonomial(m: u64, n: u64) -> u64 {
    let (q1, r1) = (m / 3, m % 3);
    let (q2, r2) = (n / 3, n % 3);
    let radix_carry = u64::from(r1 + r2 >= 3);
    let mut a = q1;
    let mut b = q2;
    let mut carry = radix_carry;
    let mut count = 0u64;
    let mut extra = 0u64;
    let mut bit = 0u32;
    while a > 0 || b > 0 || carry > 0 {
        let s = (a & 1) + (b & 1) + carry;
        carry = u64::from(s >= 2);
        if carry == 1 {
            count += 1;
            if bit == 0 {
                extra = 1;
            }
        }
        a >>= 1;
        b >>= 1;
        bit += 1;
    }
    radix_carry + count + extra
}

/// Fibonomials for digit positions: both base-F digits are at most 2, so a
/// tiny exact table suffices.
fn digit_fibonomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    // C_F(a, b) for a <= 3 (base-T digits reach 3)
    const TABLE: [[u64; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0], [1, 2, 2, 1]];
    TABLE[n as usize][k as usize]
}

/// `C_F(n, k) mod 2` as the product of digit Fibonomials over base-F
/// expansions, with `k`'s digits padded by zeros. `O(log n)` digit steps.
pub fn lucas_fibonomial_mod2(n: u64, k: u64) -> Residue {
    let nd = expand(&BigUint::from(n), MixedRadixBase::BaseF);
    let kd = expand(&BigUint::from(k), MixedRadixBase::BaseF);
    let places = nd.digits.len().max(kd.digits.len()) as u32;
    let mut acc = 1u64;
    for i in 0..places {
        acc = acc * (digit_fibonomial(nd.digit(i), kd.digit(i)) % 2) % 2;
        if acc == 0 {
            break;
        }
    }
    Residue::new(acc, 2)
}

/// Rows 0..3 of the Fibonomial triangle modulo 3, the recursion base.
const MOD3_BASE: [&[u64]; 4] = [&[1], &[1, 1], &[1, 1, 1], &[1, 2, 2, 1]];

/// `C_F(n, k) mod 3` by recursive descent on the period-`4*3^m`
/// self-similarity of the triangle.
///
/// For `n >= 4`, let `L = 4*3^m` be the largest such value with `L <= n`.
/// Rows `L..2L` reduce by one period with the sign flipped at odd `k`; rows
/// `2L..3L` reduce by two periods sign-free for `k < L`, and with the sign
/// flipped at even residual rows for `L <= k < 2L`. Every remaining column
/// is reached through the symmetry `k -> n - k`, which is asserted to land
/// in a covered column. Each step divides the row index by at least 3, so
/// the descent takes `O(log n)` steps.
pub fn fibonomial_mod3_fast(n: u64, k: u64) -> Residue {
    Residue::new(mod3_descend(n, k), 3)
}

fn mod3_descend(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    if n < 4 {
        return MOD3_BASE[n as usize][k as usize];
    }
    let mut period = 4u64;
    while period * 3 <= n {
        period *= 3;
    }
    if n < 2 * period {
        let row = n - period;
        if k < period {
            let value = mod3_descend(row, k);
            return if k % 2 == 1 { (3 - value) % 3 } else { value };
        }
        assert!(
            n - k < period,
            "symmetry must land in a covered column at ({n}, {k})"
        );
        mod3_descend(n, n - k)
    } else {
        let row = n - 2 * period;
        if k < period {
            return mod3_descend(row, k);
        }
        if k < 2 * period {
            let value = mod3_descend(row, k - period);
            return if row.is_multiple_of(2) {
                (3 - value) % 3
            } else {
                value
            };
        }
        assert!(
            n - k < period,
            "symmetry must land in a covered column at ({n}, {k})"
        );
        mod3_descend(n, n - k)
    }
}

/// One disagreement between an expected residue and the value found, at base
/// coordinates `(n, k)` of the sweep that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u64,
    pub k: u64,
    pub expected: u64,
    pub got: u64,
}

/// Outcome of a self-similarity sweep at one level `m`. An empty mismatch
/// list means the congruence held on every checked cell.
#[derive(Debug, Clone)]
pub struct SelfSimilarityReport {
    pub modulus: u64,
    pub level: u32,
    pub cells_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SelfSimilarityReport {
    pub fn verified(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Outcome of a plain oracle-equivalence sweep.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub cells_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn verified(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `C(n + 2^m, k) = C(n, k) mod 2` for all `0 <= n, k < 2^m` against
/// exact arithmetic.
pub fn verify_pascal_mod2(m: u32) -> SelfSimilarityReport {
    let period = 1u64 << m;
    let grid = TriangleGrid::build(TriangleKind::Binomial, 2 * period, 2);
    shift_sweep(&grid, m, period)
}

/// Checks `C_F(n + 3*2^m, k) = C_F(n, k) mod 2` for all `0 <= n, k < 3*2^m`
/// against exact arithmetic.
pub fn verify_self_similarity_mod2(m: u32) -> SelfSimilarityReport {
    let period = 3 * (1u64 << m);
    let grid = TriangleGrid::build(TriangleKind::Fibonomial, 2 * period, 2);
    shift_sweep(&grid, m, period)
}

fn shift_sweep(grid: &TriangleGrid, m: u32, period: u64) -> SelfSimilarityReport {
    let mut mismatches = Vec::new();
    for n in 0..period {
        for k in 0..period {
            let expected = grid.cell(n, k);
            let got = grid.cell(n + period, k);
            if expected != got {
                mismatches.push(Mismatch {
                    n,
                    k,
                    expected,
                    got,
                });
            }
        }
    }
    SelfSimilarityReport {
        modulus: grid.modulus(),
        level: m,
        cells_checked: period * period,
        mismatches,
    }
}

/// Checks that rows `3*2^m .. 2*3*2^m` of the mod-2 triangle are exactly two
/// copies of the top subtriangle flanking an inverted triangle of zeros.
pub fn verify_mod2_picture(m: u32) -> SelfSimilarityReport {
    let period = 3 * (1u64 << m);
    let grid = TriangleGrid::build(TriangleKind::Fibonomial, 2 * period, 2);
    let mut mismatches = Vec::new();
    let mut cells = 0u64;
    for row in period..2 * period {
        let n = row - period;
        for k in 0..=row {
            let expected = if k <= n {
                grid.cell(n, k)
            } else if k < period {
                0
            } else {
                grid.cell(n, k - period)
            };
            let got = grid.cell(row, k);
            cells += 1;
            if expected != got {
                mismatches.push(Mismatch {
                    n: row,
                    k,
                    expected,
                    got,
                });
            }
        }
    }
    SelfSimilarityReport {
        modulus: 2,
        level: m,
        cells_checked: cells,
        mismatches,
    }
}

/// The four pieces of the mod-3 self-similarity statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mod3Part {
    /// `C_F(n + 4*3^m, k) = ±C_F(n, k)`, sign - at odd `k`.
    Congruence1,
    /// `C_F(n + 8*3^m, k) = C_F(n, k)`.
    Congruence2,
    /// `C_F(n + 8*3^m, k + 4*3^m) = ∓C_F(n, k)`, sign - at even `n`.
    Congruence3,
    /// Every cell of rows `4*3^m .. 4*3^(m+1)` not covered above is reached
    /// by the symmetry `k -> n - k`.
    SymmetryCompletion,
}

impl Mod3Part {
    pub const ALL: [Mod3Part; 4] = [
        Mod3Part::Congruence1,
        Mod3Part::Congruence2,
        Mod3Part::Congruence3,
        Mod3Part::SymmetryCompletion,
    ];
}

impl fmt::Display for Mod3Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mod3Part::Congruence1 => write!(f, "congruence 1"),
            Mod3Part::Congruence2 => write!(f, "congruence 2"),
            Mod3Part::Congruence3 => write!(f, "congruence 3"),
            Mod3Part::SymmetryCompletion => write!(f, "symmetry completion"),
        }
    }
}

/// Checks one piece of the mod-3 self-similarity statement at level `m`
/// against exact arithmetic.
pub fn verify_mod3_part(part: Mod3Part, m: u32) -> SelfSimilarityReport {
    let period = 4 * 3u64.pow(m);
    let grid = TriangleGrid::build(TriangleKind::Fibonomial, 3 * period, 3);
    mod3_part_sweep(&grid, part, m, period)
}

fn mod3_part_sweep(
    grid: &TriangleGrid,
    part: Mod3Part,
    m: u32,
    period: u64,
) -> SelfSimilarityReport {
    let negate = |v: u64| (3 - v) % 3;
    let mut mismatches = Vec::new();
    let mut cells = 0u64;
    let mut check = |n: u64, k: u64, expected: u64, got: u64| {
        cells += 1;
        if expected != got {
            mismatches.push(Mismatch {
                n,
                k,
                expected,
                got,
            });
        }
    };
    match part {
        Mod3Part::Congruence1 => {
            for n in 0..period {
                for k in 0..period {
                    let base = grid.cell(n, k);
                    let expected = if k % 2 == 1 { negate(base) } else { base };
                    check(n, k, expected, grid.cell(n + period, k));
                }
            }
        }
        Mod3Part::Congruence2 => {
            for n in 0..period {
                for k in 0..period {
                    check(n, k, grid.cell(n, k), grid.cell(n + 2 * period, k));
                }
            }
        }
        Mod3Part::Congruence3 => {
            for n in 0..period {
                for k in 0..period {
                    let base = grid.cell(n, k);
                    let expected = if n % 2 == 0 { negate(base) } else { base };
                    check(n, k, expected, grid.cell(n + 2 * period, k + period));
                }
            }
        }
        Mod3Part::SymmetryCompletion => {
            // Cells of rows period..3*period beyond the congruence-covered
            // columns: predict via symmetry into a covered column, then via
            // the matching congruence from the base subtriangle.
            for row in period..3 * period {
                let covered = if row < 2 * period { period } else { 2 * period };
                for k in covered..=row {
                    let mirrored = row - k;
                    assert!(
                        mirrored < period,
                        "symmetry must land in a covered column at ({row}, {k})"
                    );
                    let expected = if row < 2 * period {
                        let base = grid.cell(row - period, mirrored);
                        if mirrored % 2 == 1 {
                            negate(base)
                        } else {
                            base
                        }
                    } else {
                        grid.cell(row - 2 * period, mirrored)
                    };
                    check(row, k, expected, grid.cell(row, k));
                }
            }
        }
    }
    SelfSimilarityReport {
        modulus: 3,
        level: m,
        cells_checked: cells,
        mismatches,
    }
}

/// Checks all three mod-3 congruences plus the symmetry completion at level
/// `m` against exact arithmetic, in one combined report.
pub fn verify_self_similarity_mod3(m: u32) -> SelfSimilarityReport {
    let period = 4 * 3u64.pow(m);
    let grid = TriangleGrid::build(TriangleKind::Fibonomial, 3 * period, 3);
    let mut combined = SelfSimilarityReport {
        modulus: 3,
        level: m,
        cells_checked: 0,
        mismatches: Vec::new(),
    };
    for part in Mod3Part::ALL {
        let report = mod3_part_sweep(&grid, part, m, period);
        combined.cells_checked += report.cells_checked;
        combined.mismatches.extend(report.mismatches);
    }
    combined
}

/// How a digit product relates to the true residue in the base-T experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFit {
    /// `C_F(n,k) = +product (mod 3)` only.
    Plus,
    /// `C_F(n,k) = -product (mod 3)` only.
    Minus,
    /// Product is zero and so is the residue: both signs fit.
    Both,
    /// No sign fits; a counterexample to the conjectured form.
    Neither,
}

impl fmt::Display for SignFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignFit::Plus => write!(f, "+"),
            SignFit::Minus => write!(f, "-"),
            SignFit::Both => write!(f, "±"),
            SignFit::Neither => write!(f, "neither"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignRow {
    pub n: u64,
    pub k: u64,
    /// `C_F(n, k) mod 3`, from exact arithmetic.
    pub lhs: u64,
    /// The base-T digit product of Fibonomials, mod 3.
    pub digit_product: u64,
    pub fit: SignFit,
}

/// Tabulates, for all `0 <= k <= n <= n_max`, whether `C_F(n,k) mod 3` equals
/// plus or minus its base-T digit product of Fibonomials. Which sign applies
/// where is unknown; this experiment only records the fits and flags any
/// `Neither` rows, which are expected never to occur.
pub fn mod3_sign_experiment(n_max: u64) -> Vec<SignRow> {
    let grid = TriangleGrid::build(TriangleKind::Fibonomial, n_max + 1, 3);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let nd = expand(&BigUint::from(n), MixedRadixBase::BaseT);
        for k in 0..=n {
            let kd = expand(&BigUint::from(k), MixedRadixBase::BaseT);
            let places = nd.digits.len().max(kd.digits.len()) as u32;
            let mut product = 1u64;
            for i in 0..places {
                product = product * (digit_fibonomial(nd.digit(i), kd.digit(i)) % 3) % 3;
            }
            let lhs = grid.cell(n, k);
            let fit = if product == 0 {
                if lhs == 0 {
                    SignFit::Both
                } else {
                    SignFit::Neither
                }
            } else if lhs == product {
                SignFit::Plus
            } else if lhs == (3 - product) % 3 {
                SignFit::Minus
            } else {
                SignFit::Neither
            };
            rows.push(SignRow {
                n,
                k,
                lhs,
                digit_product: product,
                fit,
            });
        }
    }
    rows
}

/// Checks the carry-counting valuation against exact `nu_2` on every cell
/// with `C_F(n, k) != 1` of the first `n_max + 1` rows.
pub fn verify_knuth_wilf(n_max: u64) -> SweepReport {
    let mut iter = FibonomialRows::new();
    let mut mismatches = Vec::new();
    let mut cells = 0u64;
    for n in 0..=n_max {
        let row = iter.next_row();
        for (k, value) in row.iter().enumerate() {
            if value == &BigUint::from(1u32) {
                continue;
            }
            let k = k as u64;
            cells += 1;
            let expected = exact::nu(value, 2);
            let got = knuth_wilf_nu2_fibonomial(k, n - k);
            if expected != got {
                mismatches.push(Mismatch {
                    n,
                    k,
                    expected,
                    got,
                });
            }
        }
    }
    SweepReport {
        cells_checked: cells,
        mismatches,
    }
}

/// Checks the digit-product parity against exact arithmetic on all cells
/// with `n <= n_max`.
pub fn verify_lucf_dense(n_max: u64) -> SweepReport {
    let grid = TriangleGrid::build(TriangleKind::Fibonomial, n_max + 1, 2);
    let mut mismatches = Vec::new();
    let mut cells = 0u64;
    for n in 0..=n_max {
        for k in 0..=n {
            cells += 1;
            let expected = grid.cell(n, k);
            let got = lucas_fibonomial_mod2(n, k).value();
            if expected != got {
                mismatches.push(Mismatch {
                    n,
                    k,
                    expected,
                    got,
                });
            }
        }
    }
    SweepReport {
        cells_checked: cells,
        mismatches,
    }
}

/// Checks the digit-product parity on caller-supplied `(n, k)` pairs against
/// exact 2-adic valuations of the Fibotorial quotient, which stay feasible
/// far beyond the range where the full integers could be formed.
pub fn verify_lucf_pairs(pairs: &[(u64, u64)]) -> SweepReport {
    let n_max = pairs.iter().map(|&(n, _)| n).max().unwrap_or(0);
    let valuations = FibotorialValuations::new(n_max);
    let mut mismatches = Vec::new();
    for &(n, k) in pairs {
        assert!(k <= n, "pairs must satisfy k <= n");
        let expected = u64::from(valuations.fibonomial_parity(n, k));
        let got = lucas_fibonomial_mod2(n, k).value();
        if expected != got {
            mismatches.push(Mismatch {
                n,
                k,
                expected,
                got,
            });
        }
    }
    SweepReport {
        cells_checked: pairs.len() as u64,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn residue_reduces_and_balances() {
        let r = Residue::new(5, 3);
        assert_eq!(r.value(), 2);
        assert_eq!(r.balanced(), -1);
        assert_eq!(Residue::new(1, 2).balanced(), 1);
        assert_eq!(Residue::new(3, 5).balanced(), -2);
    }

    #[test]
    fn lucas_binomial_examples() {
        assert_eq!(lucas_binomial_mod_p(5, 2, 2).value(), 0);
        assert_eq!(lucas_binomial_mod_p(9, 0, 3).value(), 1);
        assert_eq!(lucas_binomial_mod_p(7, 3, 2).value(), 1);
    }

    #[test]
    fn lucas_binomial_matches_exact_to_300() {
        for p in [2u64, 3, 5] {
            // Pascal recurrence mod p as the oracle
            let mut row = vec![1u64];
            for n in 0..=300u64 {
                for k in 0..=n {
                    assert_eq!(
                        lucas_binomial_mod_p(n, k, p).value(),
                        row[k as usize],
                        "({n},{k}) mod {p}"
                    );
                }
                let mut next = vec![1u64];
                for k in 1..row.len() {
                    next.push((row[k - 1] + row[k]) % p);
                }
                next.push(1);
                row = next;
            }
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_nu(1, 1, 2), 1);
        assert_eq!(kummer_nu(9, 0, 5), 0);
        assert_eq!(kummer_nu(3, 1, 2), 2);
    }

    #[test]
    fn kummer_matches_exact_valuations_to_300() {
        for p in [2u64, 3, 5] {
            // exact Pascal rows as the oracle
            let mut row = vec![BigUint::one()];
            for n in 0..=300u64 {
                for m in 0..=n {
                    assert_eq!(
                        kummer_nu(m, n - m, p),
                        exact::nu(&row[m as usize], p),
                        "C({n},{m}), p = {p}"
                    );
                }
                let mut next = vec![BigUint::one()];
                for k in 1..row.len() {
                    next.push(&row[k - 1] + &row[k]);
                }
                next.push(BigUint::one());
                row = next;
            }
        }
    }

    #[test]
    fn knuth_wilf_examples() {
        assert_eq!(knuth_wilf_nu2_fibonomial(3, 3), 2);
        assert_eq!(knuth_wilf_nu2_fibonomial(9, 0), 0);
        assert_eq!(knuth_wilf_nu2_fibonomial(1, 5), 3);
        assert_eq!(knuth_wilf_nu2_fibonomial(1, 2), 1);
        assert_eq!(knuth_wilf_nu2_fibonomial(2, 4), 3);
    }

    #[test]
    fn knuth_wilf_matches_exact_to_80_including_unit_cells() {
        let mut iter = FibonomialRows::new();
        for n in 0..=80u64 {
            let row = iter.next_row();
            for (k, value) in row.iter().enumerate() {
                let expected = exact::nu(value, 2);
                assert_eq!(
                    knuth_wilf_nu2_fibonomial(k as u64, n - k as u64),
                    expected,
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn lucf_examples() {
        assert_eq!(lucas_fibonomial_mod2(3, 1).value(), 0);
        assert_eq!(lucas_fibonomial_mod2(17, 0).value(), 1);
        assert_eq!(lucas_fibonomial_mod2(5, 2).value(), 1);
        // k > n yields a digit with k_i > n_i somewhere
        assert_eq!(lucas_fibonomial_mod2(4, 9).value(), 0);
    }

    #[test]
    fn lucf_dense_sweep_to_200() {
        let report = verify_lucf_dense(200);
        assert_eq!(report.cells_checked, 201 * 202 / 2);
        assert!(report.verified(), "{:?}", report.mismatches.first());
    }

    #[test]
    fn mod3_fast_examples() {
        assert_eq!(fibonomial_mod3_fast(3, 1).value(), 2);
        assert_eq!(fibonomial_mod3_fast(4, 2).value(), 0);
        assert_eq!(fibonomial_mod3_fast(11, 5).value(), 2);
        assert_eq!(fibonomial_mod3_fast(11, 5).balanced(), -1);
        assert_eq!(fibonomial_mod3_fast(2, 5).value(), 0);
    }

    #[test]
    fn mod3_fast_matches_exact_to_324() {
        let grid = TriangleGrid::build(TriangleKind::Fibonomial, 325, 3);
        for n in 0..=324u64 {
            for k in 0..=n {
                assert_eq!(
                    fibonomial_mod3_fast(n, k).value(),
                    grid.cell(n, k),
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn pascal_self_similarity_small_levels() {
        let m0 = verify_pascal_mod2(0);
        assert_eq!(m0.cells_checked, 1);
        assert!(m0.verified());
        let m2 = verify_pascal_mod2(2);
        assert_eq!(m2.cells_checked, 16);
        assert!(m2.verified());
    }

    #[test]
    fn mod2_self_similarity_small_levels() {
        for (m, cells) in [(0u32, 9u64), (1, 36), (2, 144)] {
            let report = verify_self_similarity_mod2(m);
            assert_eq!(report.cells_checked, cells);
            assert!(report.verified(), "level {m}");
        }
    }

    #[test]
    fn mod2_picture_decomposes_small_levels() {
        for m in 0..=3 {
            let report = verify_mod2_picture(m);
            assert!(report.verified(), "level {m}");
        }
    }

    #[test]
    fn mod3_parts_small_levels() {
        let c1 = verify_mod3_part(Mod3Part::Congruence1, 0);
        assert_eq!(c1.cells_checked, 16);
        assert!(c1.verified());
        for part in Mod3Part::ALL {
            assert!(verify_mod3_part(part, 0).verified(), "{part}");
        }
        assert!(verify_self_similarity_mod3(1).verified());
    }

    #[test]
    fn sign_experiment_has_no_neither_rows_to_20() {
        let rows = mod3_sign_experiment(20);
        assert_eq!(rows.len(), 21 * 22 / 2);
        assert!(rows.iter().all(|r| r.fit != SignFit::Neither));
        // (n, 0): both sides are 1, so the fit is +
        for row in rows.iter().filter(|r| r.k == 0) {
            assert_eq!(row.lhs, 1);
            assert_eq!(row.digit_product, 1);
            assert_eq!(row.fit, SignFit::Plus);
        }
        // digit product 0 forces the residue to 0
        for row in rows.iter().filter(|r| r.digit_product == 0) {
            assert_eq!(row.lhs, 0, "({}, {})", row.n, row.k);
        }
    }

    #[test]
    fn lucf_pairs_against_valuation_oracle() {
        let pairs: Vec<(u64, u64)> = (0..400u64)
            .map(|i| (i * 37 % 1000 + i, i * 13 % 97))
            .collect();
        let pairs: Vec<(u64, u64)> = pairs.into_iter().map(|(n, k)| (n, k.min(n))).collect();
        let report = verify_lucf_pairs(&pairs);
        assert_eq!(report.cells_checked, 400);
        assert!(report.verified(), "{:?}", report.mismatches.first());
    }

    #[test]
    fn middle_triangle_is_zero_to_level_3() {
        for m in 0..=3u32 {
            let period = 3 * (1u64 << m);
            let grid = TriangleGrid::build(TriangleKind::Fibonomial, 2 * period, 2);
            for n in 0..period {
                for k in n + 1..period {
                    assert_eq!(grid.cell(n + period, k), 0, "m={m} ({n},{k})");
                }
            }
        }
    }

    mod properties {
        use super::super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn valuations() -> &'static FibotorialValuations {
            static VALS: OnceLock<FibotorialValuations> = OnceLock::new();
            VALS.get_or_init(|| FibotorialValuations::new(5000))
        }

        proptest! {
            // the digit product against exact 2-adic valuations, well past
            // the dense sweep's range
            #[test]
            fn digit_parity_matches_valuations(n in 0u64..=5000, k_seed: u64) {
                let k = if n == 0 { 0 } else { k_seed % (n + 1) };
                prop_assert_eq!(
                    lucas_fibonomial_mod2(n, k).value(),
                    u64::from(valuations().fibonomial_parity(n, k))
                );
            }

            // carry counting against the same oracle
            #[test]
            fn carry_count_matches_valuations(m in 0u64..=2500, n in 0u64..=2500) {
                prop_assert_eq!(
                    knuth_wilf_nu2_fibonomial(m, n),
                    valuations().nu2_fibonomial(m + n, m)
                );
            }
        }
    }
}
