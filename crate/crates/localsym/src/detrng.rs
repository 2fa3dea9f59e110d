//! Deterministic seeding for the randomized pieces (equal-degree splitting,
//! certificate sampling). Seeds are derived from canonical input strings with
//! FNV-1a so identical inputs always replay the same random choices.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub(crate) fn rng_for(label: &str, parts: &[&str]) -> ChaCha8Rng {
    let mut h = fnv1a64(label.as_bytes());
    for p in parts {
        h ^= fnv1a64(p.as_bytes());
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}
