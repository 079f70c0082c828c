//! Seeded, splittable randomness.
//!
//! All randomized operations draw from ChaCha8 keyed by a caller-supplied
//! 64-bit seed. Independent substreams come from the cipher's 64-bit stream
//! counter, so `stream(seed, 0)`, `stream(seed, 1)`, ... are decorrelated but
//! fully reproducible. Each operation documents its stream layout and draw
//! order next to its definition.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub type SeedRng = rand_chacha::ChaCha8Rng;

/// Root stream for a seed (stream counter 0).
pub fn root(seed: u64) -> SeedRng {
    SeedRng::seed_from_u64(seed)
}

/// Substream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> SeedRng {
    let mut r = SeedRng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Derives an independent child seed for a named substream: the first
/// 64 bits of `stream(seed, id)`.
pub fn child_seed(seed: u64, id: u64) -> u64 {
    stream(seed, id).random()
}

/// One fair coin.
#[inline]
pub fn coin(rng: &mut SeedRng) -> bool {
    rng.random::<bool>()
}

/// Uniform index in `0..n`. Panics if `n == 0`.
#[inline]
pub fn index(rng: &mut SeedRng, n: usize) -> usize {
    rng.random_range(0..n)
}

/// Uniformly shuffled `0..n` (Fisher–Yates, one draw per position).
pub fn permutation(rng: &mut SeedRng, n: usize) -> alloc::vec::Vec<u32> {
    let mut v: alloc::vec::Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    v
}
