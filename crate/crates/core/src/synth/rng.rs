// SPDX-License-Identifier: MIT OR Apache-2.0

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Portable seeded stream.
///
/// ChaCha20 keyed with the seed's 8 little-endian bytes followed by 24 zero
/// bytes, stream 0. Integers in `[lo, hi]` take `x % span` of the first
/// 64-bit output `x >= 2^64 mod span`; Bernoulli draws compare
/// `(x >> 11) * 2^-53` against `p`.
#[derive(Clone, Debug)]
pub struct SynthRng(ChaCha20Rng);

impl SynthRng {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Self(ChaCha20Rng::from_seed(key))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn uniform(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo).wrapping_add(1);
        if span == 0 {
            return self.next_u64();
        }
        let threshold = span.wrapping_neg() % span;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return lo + x % span;
            }
        }
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        let u = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        u < p
    }
}
