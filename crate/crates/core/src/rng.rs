//! Deterministic pseudo-random generation.
//!
//! The generator is SplitMix64 and every draw is defined in terms of it, so a
//! given `(seed, trial)` pair produces the same matrix in any implementation:
//!
//! * `next_u64`: `state += 0x9E3779B97F4A7C15`, then the standard SplitMix64
//!   finalizer (`xor-shift 30, * 0xBF58476D1CE4E5B9, xor-shift 27,
//!   * 0x94D049BB133111EB, xor-shift 31`).
//! * `int_in(-h, h)`: `next_u64() % (2h + 1) - h` (modulo bias accepted).
//! * trial seed `i` of master seed `s`: `mix(s + (i + 1) * 0x9E3779B97F4A7C15)`
//!   where `mix` is the finalizer alone.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::{RatPoly, RationalPolynomials};
use crate::quadratic::{QuadElem, QuadraticIntegers};
use crate::ring::{Integers, Ring};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under master seed `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform-ish integer in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Integer in `[-h, h]`.
    pub fn int_in(&mut self, h: u64) -> i64 {
        self.below(2 * h + 1) as i64 - h as i64
    }
}

/// Size limits for random ring elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryBounds {
    /// Bound on integer coordinates / coefficient numerators.
    pub height: u64,
    /// Bound on polynomial degree (ignored by other rings).
    pub degree: usize,
}

/// Rings that can draw deterministic random elements.
pub trait RandomElement: Ring {
    fn random_elem(&self, rng: &mut SplitMix64, bounds: &EntryBounds) -> Self::Elem;
    fn random_unit(&self, rng: &mut SplitMix64) -> Self::Elem;
}

impl RandomElement for Integers {
    fn random_elem(&self, rng: &mut SplitMix64, bounds: &EntryBounds) -> BigInt {
        BigInt::from(rng.int_in(bounds.height))
    }

    fn random_unit(&self, rng: &mut SplitMix64) -> BigInt {
        if rng.below(2) == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        }
    }
}

impl RandomElement for RationalPolynomials {
    /// Degree drawn in `[0, degree]`, numerators in `[-h, h]`, denominators in `{1, 2, 3}`
    /// with `1` twice as likely.
    fn random_elem(&self, rng: &mut SplitMix64, bounds: &EntryBounds) -> RatPoly {
        let deg = rng.below(bounds.degree as u64 + 1) as usize;
        let coeffs = (0..=deg)
            .map(|_| {
                let num = rng.int_in(bounds.height);
                let den = [1, 1, 2, 3][rng.below(4) as usize];
                BigRational::new(num.into(), BigInt::from(den))
            })
            .collect();
        RatPoly::new(coeffs)
    }

    /// Nonzero constant `n/k` with `n` in `[-3, 3] \ {0}` and `k` in `{1, 2}`.
    fn random_unit(&self, rng: &mut SplitMix64) -> RatPoly {
        let mut num = rng.int_in(3);
        if num == 0 {
            num = 1;
        }
        let den = 1 + rng.below(2) as i64;
        RatPoly::constant(BigRational::new(num.into(), den.into()))
    }
}

impl RandomElement for QuadraticIntegers {
    fn random_elem(&self, rng: &mut SplitMix64, bounds: &EntryBounds) -> QuadElem {
        let x = rng.int_in(bounds.height);
        let y = rng.int_in(bounds.height);
        QuadElem::new(x, y)
    }

    /// `+-u^k` with `k` in `{-1, 0, 1}`.
    fn random_unit(&self, rng: &mut SplitMix64) -> QuadElem {
        let k = rng.int_in(1);
        let u = self.unit_power(k);
        if rng.below(2) == 0 {
            u
        } else {
            self.neg(&u)
        }
    }
}
