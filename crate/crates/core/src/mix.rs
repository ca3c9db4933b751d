//! Deterministic seed mixing.
//!
//! Sampling draws coefficients from a counter-based stream so that a given
//! seed produces the same function everywhere: draw `t` of stream `seed` is
//! `hash64(seed, t)`. The mixer is the SplitMix64 finalizer applied to
//! `seed + (t + 1) * 0x9E3779B97F4A7C15`, i.e. output `t` of a SplitMix64
//! generator whose state starts at `seed`.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Mixes `(seed, index)` into a uniform-looking 64-bit value.
pub fn hash64(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
