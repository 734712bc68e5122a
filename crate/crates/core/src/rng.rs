//! The single pseudo-random source used by generators and experiments.
//!
//! The stream is SplitMix64 (Steele, Lea and Flood), seeded by using the seed
//! as the initial state. Every draw consumes exactly one 64-bit output except
//! [`Rng::below`], which rejects outputs at or above the largest multiple of
//! the bound. Derived quantities:
//!
//! * `coin()`: top bit of the output.
//! * `unit()`: `(x >> 11) * 2^-53`, uniform in `[0, 1)`.
//! * `below(b)`: `x % b` for the first output `x < M - (M mod b)` with
//!   `M = 2^64 - 1`; larger outputs are discarded.
//!
//! Independent streams for parallel work are seeded with
//! [`stream_seed`]`(master, i)`, the first SplitMix64 output for state
//! `master + i` (wrapping).

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub const DEFAULT_SEED: u64 = 0x5EED_DC0C;

pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    #[inline]
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` without modulo bias. `bound` must be positive.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let reject_from = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < reject_from {
                return x % bound;
            }
        }
    }
}

pub fn stream_seed(master: u64, index: u64) -> u64 {
    Rng::new(master.wrapping_add(index)).next_u64()
}
