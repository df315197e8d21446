//! Deterministic seed derivation for parallel trial fan-out.
//!
//! Each trial gets its own ChaCha stream seeded from a splitmix64 walk over
//! the global seed, so results are identical whether trials run sequentially
//! or in parallel.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One splitmix64 step: mixes `state + index` into a well-distributed u64.
pub fn splitmix64(state: u64, index: u64) -> u64 {
    let mut z = state
        .wrapping_add(index.wrapping_mul(0x9e3779b97f4a7c15))
        .wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives the RNG for trial `index` of the stream identified by `label`.
pub fn trial_rng(global_seed: u64, label: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(splitmix64(global_seed, label), index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn splitmix_distinct_indices() {
        let a = splitmix64(42, 0);
        let b = splitmix64(42, 1);
        let c = splitmix64(43, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn trial_rng_deterministic() {
        let mut r1 = trial_rng(7, 1, 3);
        let mut r2 = trial_rng(7, 1, 3);
        assert_eq!(r1.next_u64(), r2.next_u64());
        let mut r3 = trial_rng(7, 1, 4);
        let mut r1b = trial_rng(7, 1, 3);
        r1b.next_u64();
        assert_ne!(r1.next_u64(), r3.next_u64());
    }
}
