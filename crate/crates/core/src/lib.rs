//! Exact arithmetic for Fibonomial coefficients and the fractal structure of
//! their residues.
//!
//! The Fibonomial coefficient is the Fibonacci analogue of the binomial
//! coefficient: with `n!_F = F_1 F_2 ... F_n`, it is
//! `C_F(n,k) = n!_F / (k!_F (n-k)!_F)`, always an integer. Reduced modulo 2
//! the Fibonomial triangle is self-similar with period `3*2^m` rows, and
//! modulo 3 with period `4*3^m` rows (with sign twists). This crate provides
//!
//! * exact big-integer computation of Fibonacci numbers, Fibotorials,
//!   Fibonomials, binomials and Catalan numbers ([`exact`]),
//! * mixed-radix digit expansions over divisibility-chain bases ([`radix`]),
//! * digit- and carry-based congruence machinery: Lucas' and Kummer's
//!   theorems, the 2-adic Fibonomial valuation by carry counting, an
//!   `O(log n)` evaluator for Fibonomials mod 2 and mod 3, and verifiers for
//!   the self-similarity congruences ([`congruence`]),
//! * the monomino/domino tiling model behind the combinatorial proofs,
//!   including the parity involution and lattice-path fixed point counts
//!   ([`tilings`]),
//! * the two-variable `{n}` polynomial generalization with its Catalan
//!   analogue and 2-adic valuation checks ([`st_poly`]),
//! * triangle grids of residues with text/PBM/PGM/CSV rendering
//!   ([`triangle`]).
//!
//! All arithmetic is exact; floating point is never used. The `parallel`
//! feature (on by default) runs row construction and verification sweeps on
//! a rayon thread pool; disabling it yields a fully sequential build with
//! identical results.

pub mod congruence;
pub mod exact;
pub mod radix;
pub mod st_poly;
mod sweep;
pub mod tilings;
pub mod triangle;

pub use num_bigint::{BigInt, BigUint};
