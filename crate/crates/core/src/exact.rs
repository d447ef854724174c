//! Exact arbitrary-precision computation of Fibonacci numbers, Fibotorials,
//! Fibonomial coefficients, ordinary binomials, Catalan numbers, p-adic
//! valuations and the rank of apparition.
//!
//! Everything here is integer-exact. Fibonomials are computed by the
//! recursion `C_F(n,k) = F_{n-k+1} C_F(n-1,k-1) + F_{k-1} C_F(n-1,k)` with a
//! memo table ([`FibonomialTable`]) or row by row ([`FibonomialRows`]); the
//! quotient form `n!_F / (k!_F (n-k)!_F)` is kept as an independent oracle
//! ([`fibonomial_via_quotient`]) and is never the primary path.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Half-row length at which an auto-parallel row advance engages the thread
/// pool. Short rows lose more to fork-join and allocator traffic than they
/// gain; the crossover sits near thousand-cell rows.
const AUTO_PAR_MIN: usize = 512;

/// Half-row length floor when parallelism is forced explicitly.
const FORCED_PAR_MIN: usize = 64;

/// Exact quotient. Panics if `d` does not divide `n`; a nonzero remainder in
/// any of the quotient formulas here indicates an arithmetic bug.
pub fn div_exact(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    assert!(r.is_zero(), "exact division left remainder {r}");
    q
}

/// `(F_n, F_{n+1})` by fast doubling.
fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (a, b) = fib_pair(n >> 1);
    // F_{2k} = F_k (2 F_{k+1} - F_k),  F_{2k+1} = F_k^2 + F_{k+1}^2
    let c = &a * ((&b << 1u32) - &a);
    let d = &a * &a + &b * &b;
    if n & 1 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// The Fibonacci number `F_n`, with `F_0 = 0`, `F_1 = 1`.
pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

/// Parity of `F_n` without computing it: 0 when `n ≡ 0 (mod 3)`, else 1.
pub fn fib_parity(n: u64) -> u8 {
    u8::from(!n.is_multiple_of(3))
}

/// The Fibotorial `n!_F = F_1 F_2 ... F_n` (empty product for `n = 0`).
pub fn fibotorial(n: u64) -> BigUint {
    let mut product = BigUint::one();
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for _ in 0..n {
        // b = F_i on entry to iteration i (1-based)
        product *= &b;
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    product
}

/// Growable cache of `F_0, F_1, ...`.
#[derive(Debug, Default)]
struct FibCache {
    values: Vec<BigUint>,
}

impl FibCache {
    fn new() -> Self {
        FibCache {
            values: vec![BigUint::zero(), BigUint::one()],
        }
    }

    fn grow_to(&mut self, n: u64) {
        while (self.values.len() as u64) <= n {
            let len = self.values.len();
            let next = &self.values[len - 1] + &self.values[len - 2];
            self.values.push(next);
        }
    }

    fn get(&self, n: u64) -> &BigUint {
        &self.values[n as usize]
    }
}

/// Memo table for Fibonomial coefficients, keyed by `(n, k)` with the
/// symmetry `k -> n-k` applied on entry so only the left half is stored.
///
/// A table is a single evaluation context: share one per thread, or guard it
/// externally. The free function [`fibonomial`] keeps one per thread.
#[derive(Debug)]
pub struct FibonomialTable {
    memo: HashMap<(u64, u64), BigUint>,
    fibs: FibCache,
}

impl Default for FibonomialTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FibonomialTable {
    pub fn new() -> Self {
        FibonomialTable {
            memo: HashMap::new(),
            fibs: FibCache::new(),
        }
    }

    /// `C_F(n, k)`, zero for `k < 0` or `k > n`.
    pub fn fibonomial(&mut self, n: u64, k: i64) -> BigUint {
        if k < 0 || k as u64 > n {
            return BigUint::zero();
        }
        let k = (k as u64).min(n - k as u64);
        if k == 0 {
            return BigUint::one();
        }
        self.fibs.grow_to(n + 1);
        self.fill(n, k);
        self.memo[&(n, k)].clone()
    }

    /// Fills the memo bottom-up over the parallelogram of cells the recursion
    /// for `(n, k)` touches. Iterative so query depth never hits the stack.
    fn fill(&mut self, n: u64, k: u64) {
        if self.memo.contains_key(&(n, k)) {
            return;
        }
        for row in 1..=n {
            let lo = k.saturating_sub(n - row).max(1);
            let hi = k.min(row.saturating_sub(1));
            for kk in lo..=hi {
                if self.memo.contains_key(&(row, kk)) {
                    continue;
                }
                let left = self.cell(row - 1, kk as i64 - 1);
                let right = self.cell(row - 1, kk as i64);
                let value = self.fibs.get(row - kk + 1) * left + self.fibs.get(kk - 1) * right;
                self.memo.insert((row, kk), value);
            }
        }
    }

    fn cell(&self, n: u64, k: i64) -> BigUint {
        if k < 0 || k as u64 > n {
            return BigUint::zero();
        }
        let k = k as u64;
        if k == 0 || k == n {
            return BigUint::one();
        }
        self.memo[&(n, k)].clone()
    }
}

thread_local! {
    static TABLE: RefCell<FibonomialTable> = RefCell::new(FibonomialTable::new());
}

/// The Fibonomial coefficient `C_F(n, k)`, zero for `k < 0` or `k > n`.
///
/// Computed by the two-term recursion with a per-thread memo table, so
/// repeated queries in one thread share work.
pub fn fibonomial(n: u64, k: i64) -> BigUint {
    TABLE.with(|t| t.borrow_mut().fibonomial(n, k))
}

/// `C_F(n, k)` by the defining quotient `n!_F / (k!_F (n-k)!_F)`.
///
/// Independent oracle for [`fibonomial`]; panics if the division leaves a
/// remainder, which would indicate an arithmetic bug.
pub fn fibonomial_via_quotient(n: u64, k: u64) -> BigUint {
    assert!(k <= n, "fibonomial_via_quotient requires 0 <= k <= n");
    div_exact(&fibotorial(n), &(fibotorial(k) * fibotorial(n - k)))
}

/// Successive rows of the Fibonomial triangle, each produced from the last by
/// the two-term recursion.
///
/// Row `n` has `n + 1` exact entries. With the `parallel` feature the entries
/// of long rows are computed on the rayon pool once rows grow past the point
/// where that pays for itself; [`with_parallelism`] overrides the policy in
/// either direction (a no-op in sequential builds).
///
/// [`with_parallelism`]: FibonomialRows::with_parallelism
#[derive(Debug)]
pub struct FibonomialRows {
    fibs: FibCache,
    row: Vec<BigUint>,
    /// Half-row length from which the pool is used; `None` disables it.
    parallel_min: Option<usize>,
}

impl Default for FibonomialRows {
    fn default() -> Self {
        Self::new()
    }
}

impl FibonomialRows {
    pub fn new() -> Self {
        FibonomialRows {
            fibs: FibCache::new(),
            row: Vec::new(),
            parallel_min: cfg!(feature = "parallel").then_some(AUTO_PAR_MIN),
        }
    }

    /// Forces row construction onto the thread pool (or off it), overriding
    /// the row-length policy.
    pub fn with_parallelism(mut self, enabled: bool) -> Self {
        self.parallel_min = (enabled && cfg!(feature = "parallel")).then_some(FORCED_PAR_MIN);
        self
    }

    /// Index of the current row, if one has been produced.
    pub fn row_index(&self) -> Option<u64> {
        self.row.len().checked_sub(1).map(|n| n as u64)
    }

    /// Advances to the next row and returns it. The first call returns row 0.
    pub fn next_row(&mut self) -> &[BigUint] {
        if self.row.is_empty() {
            self.row.push(BigUint::one());
            return &self.row;
        }
        let n = self.row.len() as u64; // index of the row being built
        self.fibs.grow_to(n + 1);
        let half = (n / 2) as usize;
        let prev = &self.row;
        let fibs = &self.fibs;
        let entry = |k: usize| {
            if k == 0 {
                return BigUint::one();
            }
            let k64 = k as u64;
            fibs.get(n - k64 + 1) * &prev[k - 1] + fibs.get(k64 - 1) * &prev[k]
        };
        let mut next = self.compute_half(half, entry);
        for k in half + 1..=n as usize {
            next.push(next[n as usize - k].clone());
        }
        self.row = next;
        &self.row
    }

    #[cfg(feature = "parallel")]
    fn compute_half(
        &self,
        half: usize,
        entry: impl Fn(usize) -> BigUint + Send + Sync,
    ) -> Vec<BigUint> {
        match self.parallel_min {
            Some(min) if half >= min => {
                // chunked so a task amortizes the fork-join cost over many cells
                (0..half + 1)
                    .into_par_iter()
                    .with_min_len(FORCED_PAR_MIN / 2)
                    .map(entry)
                    .collect()
            }
            _ => (0..=half).map(entry).collect(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn compute_half(
        &self,
        half: usize,
        entry: impl Fn(usize) -> BigUint + Send + Sync,
    ) -> Vec<BigUint> {
        (0..=half).map(entry).collect()
    }
}

/// The binomial coefficient `C(n, k)`, zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut result = BigUint::one();
    for i in 0..k {
        result = div_exact(&(result * (n - i)), &BigUint::from(i + 1));
    }
    result
}

/// The Catalan number `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    div_exact(&binomial(2 * n, n as i64), &BigUint::from(n + 1))
}

/// The p-adic valuation: the largest `e` with `p^e | x`.
///
/// Panics on `x = 0` (the valuation is undefined) and on `p < 2`. For `p = 2`
/// this counts trailing zero bits; for general `p` it divides repeatedly.
pub fn nu(x: &BigUint, p: u64) -> u64 {
    assert!(p >= 2, "valuation requires p >= 2");
    assert!(!x.is_zero(), "valuation of zero is undefined");
    if p == 2 {
        return x.trailing_zeros().unwrap();
    }
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        x = q;
        e += 1;
    }
}

/// The rank of apparition `p*`: the least `n > 0` with `p | F_n`.
///
/// Scans the pair `(F_n, F_{n+1}) mod p`, never full integers. The scan is
/// capped at `6 p^2` steps (the pair sequence is periodic with period below
/// that); exceeding the cap panics, as it would mean broken arithmetic.
pub fn rank_of_apparition(p: u64) -> u64 {
    assert!(p >= 2);
    let cap = 6u128 * (p as u128) * (p as u128);
    let mut a = 0u64; // F_n mod p
    let mut b = 1u64; // F_{n+1} mod p
    let mut n = 0u128;
    loop {
        n += 1;
        let c = (a + b) % p;
        a = b;
        b = c;
        if a == 0 {
            return n as u64;
        }
        assert!(
            n <= cap,
            "rank of apparition scan exceeded 6p^2 for p = {p}"
        );
    }
}

/// Exact 2-adic valuations of Fibotorials, from prefix sums of `nu_2(F_i)`.
///
/// `nu_2(F_i)` is read off the trailing zeros of `F_i mod 2^64`, which is
/// exact whenever that residue is nonzero (construction panics otherwise).
/// This gives `nu_2` of any Fibonomial `C_F(n,k)` with `n <= n_max` in O(1)
/// without ever forming the huge product, so parities can be cross-checked at
/// scales where the full integers would run to gigabytes.
#[derive(Debug)]
pub struct FibotorialValuations {
    prefix: Vec<u64>,
}

impl FibotorialValuations {
    pub fn new(n_max: u64) -> Self {
        let mut prefix = Vec::with_capacity(n_max as usize + 1);
        prefix.push(0);
        let mut a = 0u64; // F_{i-1} mod 2^64
        let mut b = 1u64; // F_i mod 2^64
        let mut sum = 0u64;
        for i in 1..=n_max {
            assert!(
                b != 0,
                "nu_2(F_{i}) exceeds 63 bits; raise the residue width"
            );
            sum += b.trailing_zeros() as u64;
            prefix.push(sum);
            let c = a.wrapping_add(b);
            a = b;
            b = c;
        }
        FibotorialValuations { prefix }
    }

    pub fn n_max(&self) -> u64 {
        self.prefix.len() as u64 - 1
    }

    /// `nu_2(n!_F)`.
    pub fn nu2_fibotorial(&self, n: u64) -> u64 {
        self.prefix[n as usize]
    }

    /// `nu_2(C_F(n, k))` for `0 <= k <= n`.
    pub fn nu2_fibonomial(&self, n: u64, k: u64) -> u64 {
        assert!(k <= n);
        self.nu2_fibotorial(n) - self.nu2_fibotorial(k) - self.nu2_fibotorial(n - k)
    }

    /// `C_F(n, k) mod 2` for `0 <= k <= n`: odd iff the valuation vanishes.
    pub fn fibonomial_parity(&self, n: u64, k: u64) -> u8 {
        u8::from(self.nu2_fibonomial(n, k) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: plain iteration of the recurrence.
    fn fib_iterative(n: u64) -> BigUint {
        let mut a = BigUint::zero();
        let mut b = BigUint::one();
        for _ in 0..n {
            let c = &a + &b;
            a = std::mem::replace(&mut b, c);
        }
        a
    }

    #[test]
    fn fib_base_cases_and_small_values() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(1), BigUint::one());
        assert_eq!(fib(10), BigUint::from(55u32));
    }

    #[test]
    fn fast_doubling_matches_iteration_to_500() {
        for n in 0..=500 {
            assert_eq!(fib(n), fib_iterative(n), "F_{n}");
        }
    }

    #[test]
    fn fibotorial_small_values() {
        assert_eq!(fibotorial(0), BigUint::one());
        assert_eq!(fibotorial(4), BigUint::from(6u32));
        assert_eq!(fibotorial(6), BigUint::from(240u32));
    }

    #[test]
    fn fibonomial_boundary_and_small_values() {
        assert_eq!(fibonomial(5, -1), BigUint::zero());
        assert_eq!(fibonomial(5, 6), BigUint::zero());
        assert_eq!(fibonomial(3, 1), BigUint::from(2u32));
        assert_eq!(fibonomial(6, 3), BigUint::from(60u32));
    }

    #[test]
    fn quotient_oracle_small_values() {
        assert_eq!(fibonomial_via_quotient(5, 2), BigUint::from(15u32));
        for n in [0u64, 3, 9, 17] {
            assert_eq!(fibonomial_via_quotient(n, 0), BigUint::one());
        }
        assert_eq!(fibonomial_via_quotient(8, 4), BigUint::from(1820u32));
    }

    #[test]
    fn recursion_matches_quotient_to_120() {
        let mut table = FibonomialTable::new();
        for n in 0..=120 {
            for k in 0..=n {
                assert_eq!(
                    table.fibonomial(n, k as i64),
                    fibonomial_via_quotient(n, k),
                    "C_F({n},{k})"
                );
            }
        }
    }

    #[test]
    fn fibonomial_symmetry_to_120() {
        let mut table = FibonomialTable::new();
        for n in 0..=120 {
            for k in 0..=n {
                assert_eq!(
                    table.fibonomial(n, k as i64),
                    table.fibonomial(n, (n - k) as i64)
                );
            }
        }
    }

    #[test]
    fn rows_match_table() {
        let mut rows = FibonomialRows::new();
        let mut table = FibonomialTable::new();
        for n in 0..=60u64 {
            let row = rows.next_row();
            assert_eq!(row.len() as u64, n + 1);
            for (k, value) in row.iter().enumerate() {
                assert_eq!(*value, table.fibonomial(n, k as i64), "row {n} cell {k}");
            }
        }
        assert_eq!(rows.row_index(), Some(60));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_rows_match_sequential() {
        let mut par = FibonomialRows::new().with_parallelism(true);
        let mut seq = FibonomialRows::new().with_parallelism(false);
        for _ in 0..=200 {
            assert_eq!(par.next_row(), seq.next_row());
        }
    }

    #[test]
    fn parity_shortcut_matches_fib_to_3000() {
        let mut a = BigUint::zero();
        let mut b = BigUint::one();
        for n in 0..=3000u64 {
            let expected = u8::from((&a % 2u32) == BigUint::one());
            assert_eq!(fib_parity(n), expected, "F_{n} parity");
            let c = &a + &b;
            a = std::mem::replace(&mut b, c);
        }
    }

    #[test]
    fn binomial_values_and_range() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(7, 7), BigUint::one());
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(5, -2), BigUint::zero());
    }

    #[test]
    fn catalan_small_values() {
        assert_eq!(catalan(0), BigUint::one());
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(4), BigUint::from(14u32));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(nu(&BigUint::from(60u32), 2), 2);
        assert_eq!(nu(&BigUint::from(7u32), 2), 0);
        assert_eq!(nu(&BigUint::from(81u32), 3), 4);
    }

    #[test]
    #[should_panic(expected = "valuation of zero")]
    fn valuation_of_zero_panics() {
        nu(&BigUint::zero(), 2);
    }

    #[test]
    fn rank_of_apparition_small_primes() {
        assert_eq!(rank_of_apparition(2), 3);
        assert_eq!(rank_of_apparition(3), 4);
        assert_eq!(rank_of_apparition(5), 5);
    }

    #[test]
    fn divisibility_iff_rank_divides_index() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let rank = rank_of_apparition(p);
            let mut a = 0u64;
            let mut b = 1u64;
            for n in 1..=600u64 {
                let c = (a + b) % p;
                a = b;
                b = c;
                // a = F_n mod p
                assert_eq!(a == 0, n % rank == 0, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn fibotorial_valuations_match_exact() {
        let vals = FibotorialValuations::new(200);
        for n in [1u64, 2, 12, 60, 144, 200] {
            assert_eq!(
                vals.nu2_fibotorial(n),
                nu(&fibotorial(n), 2),
                "n!_F, n = {n}"
            );
        }
        let mut table = FibonomialTable::new();
        for n in 0..=60u64 {
            for k in 0..=n {
                let value = table.fibonomial(n, k as i64);
                assert_eq!(vals.nu2_fibonomial(n, k), nu(&value, 2));
                assert_eq!(
                    vals.fibonomial_parity(n, k),
                    u8::from((&value % 2u32).is_one())
                );
            }
        }
    }

    #[test]
    #[should_panic(expected = "exact division")]
    fn div_exact_rejects_remainder() {
        div_exact(&BigUint::from(7u32), &BigUint::from(2u32));
    }

    mod properties {
        use num_bigint::BigInt;
        use num_traits::{One, Zero};
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn integer_ring_axioms(a in any::<i128>(), b in any::<i128>(), c in any::<i128>()) {
                let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &BigInt::zero(), a.clone());
                prop_assert_eq!(&a * &BigInt::one(), a.clone());
                prop_assert!((&a - &a).is_zero());
            }
        }
    }
}
