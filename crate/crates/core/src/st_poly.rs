//! The two-variable generalization `{n}` of the Fibonacci numbers and its
//! binomial and Catalan analogues.
//!
//! `{0} = 0`, `{1} = 1`, `{n} = s{n-1} + t{n-2}`. Specializing `s = t = 1`
//! recovers `F_n`; `s = 2, t = -1` gives `{n} = n`. The generalized binomial
//! `bin{n,k} = {n}!/({k}!{n-k}!)` and Catalan `C{n} = bin{2n,n}/{n+1}` are
//! genuine polynomials in `s` and `t`; the divisions here verify that by
//! running exactly, one monic factor at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact;
use crate::radix::{zeta, MixedRadixBase};
use crate::sweep;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StPolyError {
    #[error("division left a nonzero remainder")]
    NonzeroRemainder,
    #[error("divisor is zero or not monic in s")]
    BadDivisor,
    #[error("the specialization evaluates to zero, so its valuation is undefined")]
    ZeroEvaluation,
    #[error("the valuation theorem requires s odd and t = 1 (mod 8); got s = {s}, t = {t}")]
    HypothesisNotMet { s: i64, t: i64 },
}

/// A sparse bivariate polynomial in `s` and `t` with exact integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct STPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl STPolynomial {
    pub fn zero() -> Self {
        STPolynomial::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(coeff: BigInt, s_exp: u32, t_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((s_exp, t_exp), coeff);
        }
        STPolynomial { terms }
    }

    /// Builds a polynomial from `(coefficient, s exponent, t exponent)`
    /// triples, summing duplicates.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut poly = Self::zero();
        for &(c, a, b) in terms {
            poly.add_term((a, b), BigInt::from(c));
        }
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s_exp: u32, t_exp: u32) -> BigInt {
        self.terms.get(&(s_exp, t_exp)).cloned().unwrap_or_default()
    }

    /// Largest `s` exponent, if the polynomial is nonzero.
    pub fn s_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(a, _)| a)
    }

    fn add_term(&mut self, key: (u32, u32), value: BigInt) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiplication by `s`.
    fn shift_s(&self) -> Self {
        STPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + 1, b), c.clone()))
                .collect(),
        }
    }

    /// Multiplication by `t`.
    fn shift_t(&self) -> Self {
        STPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a, b + 1), c.clone()))
                .collect(),
        }
    }

    /// Exact integer evaluation at `(s, t)`.
    pub fn evaluate(&self, s: &BigInt, t: &BigInt) -> BigInt {
        let mut s_pows: Vec<BigInt> = vec![BigInt::one()];
        let mut t_pows: Vec<BigInt> = vec![BigInt::one()];
        let mut total = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            while s_pows.len() <= a as usize {
                let next = s_pows.last().unwrap() * s;
                s_pows.push(next);
            }
            while t_pows.len() <= b as usize {
                let next = t_pows.last().unwrap() * t;
                t_pows.push(next);
            }
            total += c * &s_pows[a as usize] * &t_pows[b as usize];
        }
        total
    }

    /// Long division in `s` over exact polynomials in `t`, for divisors monic
    /// in `s`. Errors unless the remainder is zero.
    pub fn try_div_exact_in_s(&self, divisor: &Self) -> Result<Self, StPolyError> {
        let d = divisor.s_degree().ok_or(StPolyError::BadDivisor)?;
        let lead: Vec<_> = divisor
            .terms
            .range((d, 0)..=(d, u32::MAX))
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        if lead != [((d, 0), BigInt::one())] {
            return Err(StPolyError::BadDivisor);
        }
        let mut rem = self.clone();
        let mut quotient = STPolynomial::zero();
        while let Some(a) = rem.s_degree() {
            if a < d {
                return Err(StPolyError::NonzeroRemainder);
            }
            let level: Vec<((u32, u32), BigInt)> = rem
                .terms
                .range((a, 0)..=(a, u32::MAX))
                .map(|(&k, c)| (k, c.clone()))
                .collect();
            for ((_, b), c) in level {
                quotient.add_term((a - d, b), c.clone());
                for (&(ds, dt), dc) in &divisor.terms {
                    rem.add_term((a - d + ds, b + dt), -(&c * dc));
                }
            }
        }
        Ok(quotient)
    }
}

impl Add for &STPolynomial {
    type Output = STPolynomial;
    fn add(self, rhs: &STPolynomial) -> STPolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &STPolynomial {
    type Output = STPolynomial;
    fn sub(self, rhs: &STPolynomial) -> STPolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Mul for &STPolynomial {
    type Output = STPolynomial;
    fn mul(self, rhs: &STPolynomial) -> STPolynomial {
        let mut out = STPolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for STPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let magnitude = c.magnitude();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !magnitude.is_one() || (a == 0 && b == 0) {
                pieces.push(magnitude.to_string());
            }
            match a {
                0 => {}
                1 => pieces.push("s".into()),
                _ => pieces.push(format!("s^{a}")),
            }
            match b {
                0 => {}
                1 => pieces.push("t".into()),
                _ => pieces.push(format!("t^{b}")),
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

/// The polynomial `{n}`: `{0} = 0`, `{1} = 1`, `{n} = s{n-1} + t{n-2}`.
pub fn st_number(n: u64) -> STPolynomial {
    let mut prev = STPolynomial::zero();
    let mut curr = STPolynomial::one();
    if n == 0 {
        return prev;
    }
    for _ in 2..=n {
        let next = &curr.shift_s() + &prev.shift_t();
        prev = curr;
        curr = next;
    }
    curr
}

/// `{n}! = {1}{2}...{n}`, the empty product for `n = 0`.
pub fn st_factorial(n: u64) -> STPolynomial {
    let mut prev = STPolynomial::zero();
    let mut curr = STPolynomial::one();
    let mut product = STPolynomial::one();
    for _ in 1..=n {
        product = &product * &curr;
        let next = &curr.shift_s() + &prev.shift_t();
        prev = curr;
        curr = next;
    }
    product
}

/// `bin{n,k} = {n}!/({k}!{n-k}!)`, dividing the factorial by one monic factor
/// at a time to keep intermediates small. Errors if any division leaves a
/// remainder, which would disprove polynomiality.
pub fn try_st_binomial(n: u64, k: u64) -> Result<STPolynomial, StPolyError> {
    assert!(k <= n, "st binomial requires 0 <= k <= n");
    let mut poly = st_factorial(n);
    for bound in [k, n - k] {
        let mut prev = STPolynomial::zero();
        let mut curr = STPolynomial::one();
        for _ in 1..=bound {
            poly = poly.try_div_exact_in_s(&curr)?;
            let next = &curr.shift_s() + &prev.shift_t();
            prev = curr;
            curr = next;
        }
    }
    Ok(poly)
}

/// [`try_st_binomial`], unwrapped: the quotient is a polynomial for every
/// `0 <= k <= n`, so a remainder is an arithmetic bug.
pub fn st_binomial(n: u64, k: u64) -> STPolynomial {
    try_st_binomial(n, k).expect("bin{n,k} is a polynomial")
}

/// `C{n} = bin{2n,n}/{n+1}`. Errors on a nonzero remainder, which would
/// disprove the polynomiality of the Catalan analogue.
pub fn try_st_catalan(n: u64) -> Result<STPolynomial, StPolyError> {
    try_st_binomial(2 * n, n)?.try_div_exact_in_s(&st_number(n + 1))
}

/// [`try_st_catalan`], unwrapped.
pub fn st_catalan(n: u64) -> STPolynomial {
    try_st_catalan(n).expect("C{n} is a polynomial")
}

/// A claimed-versus-actual 2-adic valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationCheck {
    pub n: u64,
    pub claimed: u64,
    pub actual: u64,
}

impl ValuationCheck {
    pub fn ok(&self) -> bool {
        self.claimed == self.actual
    }
}

/// Checks `nu_2(C_n) = zeta_2(n+1) - 1` for the ordinary Catalan number,
/// computing the right side from binary digits and the left exactly.
pub fn check_nu2_catalan(n: u64) -> ValuationCheck {
    let claimed = zeta(&BigUint::from(n + 1), MixedRadixBase::Power(2)) - 1;
    let actual = exact::nu(&exact::catalan(n), 2);
    ValuationCheck { n, claimed, actual }
}

/// [`check_nu2_catalan`] over `0..=n_max`, in parallel when enabled.
pub fn sweep_nu2_catalan(n_max: u64) -> Vec<ValuationCheck> {
    sweep::map_indexed(n_max as usize + 1, |n| check_nu2_catalan(n as u64))
}

/// What `nu_2` of the specialized Catalan analogue should be: the number of
/// nonzero base-F digits of `n+1`, less one unless `n = 3 or 4 (mod 6)`.
fn claimed_nu2_st_catalan(n: u64) -> u64 {
    let digits = zeta(&BigUint::from(n + 1), MixedRadixBase::BaseF);
    if matches!(n % 6, 3 | 4) {
        digits
    } else {
        digits - 1
    }
}

fn check_hypothesis(s: i64, t: i64) -> Result<(), StPolyError> {
    if s.rem_euclid(2) == 1 && t.rem_euclid(8) == 1 {
        Ok(())
    } else {
        Err(StPolyError::HypothesisNotMet { s, t })
    }
}

/// A valuation check for one specialization `(s, t)` of `C{n}`. The
/// valuation is taken on the magnitude; the sign of the specialized value is
/// kept alongside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StValuationCheck {
    pub n: u64,
    pub s: i64,
    pub t: i64,
    pub claimed: u64,
    pub actual: u64,
    pub negative: bool,
}

impl StValuationCheck {
    pub fn ok(&self) -> bool {
        self.claimed == self.actual
    }
}

/// Checks the 2-adic valuation of `C{n}` at `(s, t)` against the base-F
/// digit-count formula. Requires `s` odd and `t = 1 (mod 8)`; errors if the
/// specialization is zero (its valuation would be undefined).
pub fn check_nu2_st_catalan(n: u64, s: i64, t: i64) -> Result<StValuationCheck, StPolyError> {
    check_nu2_st_catalan_with(&st_catalan(n), n, s, t)
}

/// As [`check_nu2_st_catalan`] with the polynomial `C{n}` supplied, so one
/// construction can serve several specializations.
pub fn check_nu2_st_catalan_with(
    catalan: &STPolynomial,
    n: u64,
    s: i64,
    t: i64,
) -> Result<StValuationCheck, StPolyError> {
    check_hypothesis(s, t)?;
    let value = catalan.evaluate(&BigInt::from(s), &BigInt::from(t));
    if value.is_zero() {
        return Err(StPolyError::ZeroEvaluation);
    }
    Ok(StValuationCheck {
        n,
        s,
        t,
        claimed: claimed_nu2_st_catalan(n),
        actual: exact::nu(value.magnitude(), 2),
        negative: value.is_negative(),
    })
}

/// Runs [`check_nu2_st_catalan`] for every `n <= n_max` and every supplied
/// `(s, t)` pair, building each `C{n}` once. Parallel over `n` when enabled.
pub fn sweep_nu2_st_catalan(
    n_max: u64,
    pairs: &[(i64, i64)],
) -> Result<Vec<StValuationCheck>, StPolyError> {
    for &(s, t) in pairs {
        check_hypothesis(s, t)?;
    }
    let per_n = sweep::map_indexed(n_max as usize + 1, |n| {
        let n = n as u64;
        let catalan = try_st_catalan(n)?;
        pairs
            .iter()
            .map(|&(s, t)| check_nu2_st_catalan_with(&catalan, n, s, t))
            .collect::<Result<Vec<_>, _>>()
    });
    let mut rows = Vec::with_capacity(pairs.len() * (n_max as usize + 1));
    for group in per_n {
        rows.extend(group?);
    }
    Ok(rows)
}
