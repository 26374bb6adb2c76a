//! Hierarchical seeding. Every random decision draws from a stream keyed by
//! its position in the computation (recursion path, phase, iteration), so
//! results do not depend on the order in which independent pieces run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedTree(u64);

impl SeedTree {
    pub fn new(seed: u64) -> Self {
        SeedTree(mix(seed))
    }

    pub fn child(self, tag: u64) -> Self {
        SeedTree(mix(self.0 ^ mix(tag.wrapping_mul(0xd6e8_feb8_6659_fd93))))
    }

    /// Child keyed by several tags in sequence.
    pub fn path(self, tags: &[u64]) -> Self {
        tags.iter().fold(self, |s, &t| s.child(t))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    pub fn key(self) -> u64 {
        self.0
    }
}
