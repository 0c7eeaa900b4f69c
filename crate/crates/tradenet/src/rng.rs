//! Seeded, counter-based random streams.
//!
//! Parallel simulation code in this crate never shares a sequential generator
//! across work items. Every random quantity is keyed by a (seed, counter) pair
//! through a SplitMix64 mix, so results are identical regardless of worker
//! count or iteration order. Sequential per-replicate work (bootstrap
//! resampling) uses a ChaCha stream derived from the same scheme.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer: a bijective mix of a 64-bit state.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from a master seed and a stream index.
#[inline]
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Uniform draw in [0, 1) keyed by (seed, counter). Order-independent.
#[inline]
pub fn uniform(seed: u64, counter: u64) -> f64 {
    let bits = mix64(seed ^ counter.wrapping_mul(GOLDEN_GAMMA).wrapping_add(GOLDEN_GAMMA));
    // 53 high bits -> [0, 1)
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw keyed by (seed, row, col) for dyad-indexed matrices.
#[inline]
pub fn uniform_dyad(seed: u64, row: usize, col: usize) -> f64 {
    let counter = (row as u64) << 32 | (col as u64 & 0xffff_ffff);
    uniform(seed, counter)
}

/// Sequential generator for replicate-local work, derived from (master, index).
pub fn stream(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, index))
}
