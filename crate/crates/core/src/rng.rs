//! Portable seeded randomness.
//!
//! All simulation randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`),
//! whose output stream is specified independently of platform and word size.
//! A 64-bit master seed is expanded into the 256-bit ChaCha key by
//! `SeedableRng::seed_from_u64` (PCG32 expansion, part of `rand_core`'s
//! stable contract).
//!
//! Independent streams (one per repetition, per network construction, ...)
//! are derived with [`derive_seed`], a SplitMix64 chain over the master seed
//! and a list of indices. Index-derived streams mean work units can run in
//! any order or in parallel without changing results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream tag for per-repetition simulation streams.
pub const TAG_REPETITION: u64 = 0x5245_5045_5449_5449; // "REPETITI"
/// Stream tag for random network construction streams.
pub const TAG_NETWORK: u64 = 0x4e45_5457_4f52_4b53; // "NETWORKS"

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from `master` and a path of indices.
///
/// `derive_seed(m, &[a, b])` differs from `derive_seed(m, &[b, a])` and
/// from `derive_seed(m, &[a])`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut h = splitmix64(master);
    for (depth, &idx) in path.iter().enumerate() {
        h = splitmix64(h ^ splitmix64(idx.wrapping_add((depth as u64 + 1).wrapping_mul(GOLDEN_GAMMA))));
    }
    h
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Uniform integer in `0..n`; sampled as `u64` so the draw is identical on
/// 32- and 64-bit targets. `n` must be positive.
pub fn uniform_index<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    debug_assert!(n > 0);
    rng.gen_range(0..n as u64) as usize
}

/// Bernoulli trial. `p` must lie in `[0, 1]`.
pub fn chance<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    rng.gen_bool(p)
}
