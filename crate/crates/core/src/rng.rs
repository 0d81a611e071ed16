//! Portable seeded randomness.
//!
//! All randomness in the crate flows through [`Rng`], a ChaCha8 stream seeded
//! with `ChaCha8Rng::seed_from_u64`. Derived quantities are defined here rather
//! than borrowed from a general-purpose crate so that their exact bit patterns
//! are pinned:
//!
//! * `uniform()` takes the top 53 bits of `next_u64` and scales by 2^-53,
//!   giving a value in `[0, 1)`.
//! * `below(n)` draws `next_u64` values and rejects those in the final partial
//!   block of size `2^64 mod n`, then returns the value modulo `n`.
//! * `shuffle` is the Durstenfeld form of Fisher-Yates: for `i` from `len-1`
//!   down to `1`, swap slot `i` with slot `below(i + 1)`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Derives an independent stream seed from a base seed and a tag.
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    // splitmix64 finaliser over the combined words
    let mut z = base ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
