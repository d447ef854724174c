//! Mixed-radix numeration over divisibility-chain bases.
//!
//! A base is an increasing sequence of place values `b_0 = 1, b_1, b_2, ...`
//! with `b_{i-1} | b_i`; every natural number then has a unique expansion
//! with digit `i` below `b_{i+1} / b_i`. Bases are rules, not stored arrays,
//! so expansions have no length cap. Two bases beyond the ordinary powers
//! matter here: `F = (1, 3, 3*2, 3*2^2, ...)` drives the mod-2 structure of
//! the Fibonomial triangle and `T = (1, 4, 4*3, 4*3^2, ...)` the mod-3
//! structure.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RadixError {
    #[error("digit {digit} at position {index} exceeds its bound {bound}")]
    DigitOutOfRange { index: u32, digit: u64, bound: u64 },
}

/// A divisibility-chain base, defined by rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedRadixBase {
    /// Ordinary base `m`: place values `m^i`.
    Power(u64),
    /// Place values `1, 3, 3*2, 3*2^2, ...`
    BaseF,
    /// Place values `1, 4, 4*3, 4*3^2, ...`
    BaseT,
}

impl MixedRadixBase {
    /// The ratio `b_{i+1} / b_i`, i.e. the bound on digit `i`.
    pub fn radix_at(self, i: u32) -> u64 {
        match self {
            MixedRadixBase::Power(m) => {
                assert!(m >= 2, "power base requires m >= 2");
                m
            }
            MixedRadixBase::BaseF => {
                if i == 0 {
                    3
                } else {
                    2
                }
            }
            MixedRadixBase::BaseT => {
                if i == 0 {
                    4
                } else {
                    3
                }
            }
        }
    }

    /// The place value `b_i`.
    pub fn place_value(self, i: u32) -> BigUint {
        let mut value = BigUint::from(1u32);
        for j in 0..i {
            value *= self.radix_at(j);
        }
        value
    }
}

/// A canonical digit expansion: least significant digit first, no trailing
/// zeros (zero is the empty expansion). [`expand`] always produces canonical
/// vectors; [`compress`] validates digit bounds on the way back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector {
    pub digits: Vec<u64>,
    pub base: MixedRadixBase,
}

impl DigitVector {
    /// Digit `i`, zero beyond the stored length.
    pub fn digit(&self, i: u32) -> u64 {
        self.digits.get(i as usize).copied().unwrap_or(0)
    }
}

/// The unique expansion of `n` in `base`.
pub fn expand(n: &BigUint, base: MixedRadixBase) -> DigitVector {
    let mut digits = Vec::new();
    let mut rest = n.clone();
    let mut i = 0u32;
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&BigUint::from(base.radix_at(i)));
        digits.push(u64::try_from(&r).expect("digit below a u64 radix"));
        rest = q;
        i += 1;
    }
    DigitVector { digits, base }
}

/// Inverse of [`expand`]: the value `sum of digit_i * b_i`.
pub fn compress(d: &DigitVector) -> Result<BigUint, RadixError> {
    let mut acc = BigUint::zero();
    for (i, &digit) in d.digits.iter().enumerate().rev() {
        let bound = d.base.radix_at(i as u32);
        if digit >= bound {
            return Err(RadixError::DigitOutOfRange {
                index: i as u32,
                digit,
                bound,
            });
        }
        acc = acc * bound + digit;
    }
    Ok(acc)
}

/// The number of nonzero digits in the expansion of `n`.
pub fn zeta(n: &BigUint, base: MixedRadixBase) -> u64 {
    expand(n, base).digits.iter().filter(|&&d| d != 0).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BASES: [MixedRadixBase; 4] = [
        MixedRadixBase::Power(2),
        MixedRadixBase::Power(3),
        MixedRadixBase::BaseF,
        MixedRadixBase::BaseT,
    ];

    #[test]
    fn place_values_form_divisibility_chain() {
        for base in BASES {
            let mut prev = base.place_value(0);
            assert_eq!(prev, BigUint::from(1u32));
            for i in 1..12 {
                let next = base.place_value(i);
                assert!(next > prev);
                assert!((&next % &prev).is_zero());
                prev = next;
            }
        }
        assert_eq!(MixedRadixBase::BaseF.place_value(3), BigUint::from(12u32));
        assert_eq!(MixedRadixBase::BaseT.place_value(3), BigUint::from(36u32));
    }

    #[test]
    fn expansion_examples() {
        assert!(expand(&BigUint::zero(), MixedRadixBase::BaseF)
            .digits
            .is_empty());
        assert_eq!(
            expand(&BigUint::from(10u32), MixedRadixBase::BaseF).digits,
            vec![1, 1, 1]
        );
        assert_eq!(
            expand(&BigUint::from(5u32), MixedRadixBase::BaseF).digits,
            vec![2, 1]
        );
    }

    #[test]
    fn compress_examples() {
        let empty = DigitVector {
            digits: vec![],
            base: MixedRadixBase::BaseT,
        };
        assert_eq!(compress(&empty).unwrap(), BigUint::zero());
        let five_f = DigitVector {
            digits: vec![2, 1],
            base: MixedRadixBase::BaseF,
        };
        assert_eq!(compress(&five_f).unwrap(), BigUint::from(5u32));
        let five_binary = DigitVector {
            digits: vec![1, 0, 1],
            base: MixedRadixBase::Power(2),
        };
        assert_eq!(compress(&five_binary).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn compress_rejects_out_of_range_digit() {
        let bad = DigitVector {
            digits: vec![1, 2],
            base: MixedRadixBase::BaseF,
        };
        assert_eq!(
            compress(&bad),
            Err(RadixError::DigitOutOfRange {
                index: 1,
                digit: 2,
                bound: 2
            })
        );
    }

    #[test]
    fn digit_bounds_in_base_f_and_t() {
        for n in 0u64..5000 {
            let n = BigUint::from(n);
            let f = expand(&n, MixedRadixBase::BaseF);
            for (i, &d) in f.digits.iter().enumerate() {
                assert!(d < if i == 0 { 3 } else { 2 });
            }
            let t = expand(&n, MixedRadixBase::BaseT);
            for (i, &d) in t.digits.iter().enumerate() {
                assert!(d < if i == 0 { 4 } else { 3 });
            }
        }
    }

    #[test]
    fn expansions_are_unique_to_100000() {
        for base in BASES {
            let mut seen = std::collections::HashSet::new();
            for n in 0u64..=100_000 {
                let d = expand(&BigUint::from(n), base);
                assert!(seen.insert(d.digits.clone()), "duplicate expansion for {n}");
            }
        }
    }

    #[test]
    fn zeta_examples() {
        for base in BASES {
            assert_eq!(zeta(&BigUint::zero(), base), 0);
        }
        assert_eq!(zeta(&BigUint::from(7u32), MixedRadixBase::Power(2)), 3);
        assert_eq!(zeta(&BigUint::from(10u32), MixedRadixBase::BaseF), 3);
        for k in 1..=40u32 {
            let n = (BigUint::from(1u32) << k) - 1u32;
            assert_eq!(zeta(&n, MixedRadixBase::Power(2)), k as u64);
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in 0u64..1_000_000, idx in 0usize..4) {
            let base = BASES[idx];
            let n = BigUint::from(n);
            let d = expand(&n, base);
            prop_assert_eq!(compress(&d).unwrap(), n);
            // canonical form: no trailing zero digit
            if let Some(&last) = d.digits.last() {
                prop_assert!(last != 0);
            }
        }
    }
}
