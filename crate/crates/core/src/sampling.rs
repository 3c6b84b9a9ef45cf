//! Seeded randomness.
//!
//! All experiments draw from SplitMix64 (state += 0x9E3779B97F4A7C15, then the
//! output mix `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//! z *= 0x94D049BB133111EB; z ^= z >> 31`), with the seed used verbatim as the
//! initial state. Trial `i` of a run seeded with `s` gets its own generator
//! whose state is the `i`-th output (0-based) of the generator seeded with
//! `s`; because SplitMix64 is counter based that value is computed directly.
//! Bounded integers use rejection sampling on whole 64-bit outputs, so every
//! draw is reproducible from these definitions alone.

use rand_core::{RngCore, SeedableRng};
pub use rand_xoshiro::SplitMix64;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Initial state of sub-stream `index` of `seed`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    mix(seed.wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Generator for sub-stream `index` of `seed`.
pub fn substream(seed: u64, index: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(substream_seed(seed, index))
}

/// Uniform integer in `[0, n)`; `n` must be positive.
pub fn below<R: RngCore>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 0, "empty range");
    let zone = u64::MAX - u64::MAX % n;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % n;
        }
    }
}

/// Uniform integer in `[lo, hi]`.
pub fn in_range<R: RngCore>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    assert!(lo <= hi, "empty range");
    lo + below(rng, hi - lo + 1)
}

/// Fisher-Yates, swapping position `i` with a uniform position in `[0, i]`
/// for `i` from the end down to 1.
pub fn shuffle<R: RngCore, T>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

/// `k` distinct items: the first `k` entries of a shuffled copy.
pub fn choose<R: RngCore, T: Clone>(rng: &mut R, items: &[T], k: usize) -> Vec<T> {
    let mut v = items.to_vec();
    shuffle(rng, &mut v);
    v.truncate(k);
    v
}
