//! Deterministic sample generator.
//!
//! A 64-bit linear congruential generator with Knuth's MMIX constants:
//!
//! ```text
//! state_0     = seed XOR 0x9E37_79B9_7F4A_7C15
//! state_{k+1} = state_k * 6364136223846793005 + 1442695040888963407  (mod 2^64)
//! output_k    = state_{k+1} >> 32                                      (u32)
//! ```
//!
//! Integers in `[lo, hi]` are `lo + output mod (hi - lo + 1)`. Every sampler in
//! the crate is built from these two primitives, so a report is a pure
//! function of its seed on every platform.

use crate::rational::{ratio, Rational};

const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
const INCREMENT: u64 = 1_442_695_040_888_963_407;
const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct SampleRng {
    state: u64,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng {
            state: seed ^ SEED_MIX,
        }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish integer in `[lo, hi]` (modulo reduction).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u32() as u64 % span) as i64
    }

    /// A rational `k / den` with `k ∈ [-range·den, range·den]`.
    pub fn rational(&mut self, range: i64, den: i64) -> Rational {
        ratio(self.int_in(-range * den, range * den), den)
    }

    /// Strictly positive weights `w_i ∈ {1..=16}` normalized to sum 1.
    pub fn positive_weights(&mut self, count: usize) -> Vec<Rational> {
        let raw: Vec<i64> = (0..count).map(|_| self.int_in(1, 16)).collect();
        let total: i64 = raw.iter().sum();
        raw.into_iter().map(|w| ratio(w, total)).collect()
    }

    /// Float in `[0, 1)` with 32 bits of resolution.
    pub fn unit_f64(&mut self) -> f64 {
        self.next_u32() as f64 / 4_294_967_296.0
    }
}
