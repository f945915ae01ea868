//! Seeded randomness for the property campaigns.
//!
//! The generator is SplitMix64 with state equal to the seed. Trial `i` of a campaign seeded with
//! `seed` uses its own stream whose initial state is `seed ^ z`, where `z` is the first output of
//! SplitMix64 seeded with `i`. Uniform integers in `[0, n)` use rejection on the top of the 64-bit
//! range, so every draw consumes whole outputs and streams reproduce exactly across platforms.

use rand_core::{RngCore, SeedableRng};
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// The independent stream for trial `index` of a campaign seeded with `seed`.
pub fn trial_stream(seed: u64, index: u64) -> SplitMix64 {
    let salt = SplitMix64::seed_from_u64(index).next_u64();
    SplitMix64::seed_from_u64(seed ^ salt)
}

/// Uniform in `[0, n)`; `n` must be positive.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 0, "empty range");
    // largest multiple of n that fits, as an exclusive bound
    let zone = u64::MAX - (u64::MAX - n + 1) % n;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % n;
        }
    }
}

/// Uniform in `[-bound, bound]`.
pub fn uniform_signed<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> i64 {
    let bound = bound.min(i64::MAX as u64 / 2);
    uniform_below(rng, 2 * bound + 1) as i64 - bound as i64
}
