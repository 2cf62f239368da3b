// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic random number generation for measurement sampling.
//!
//! Histograms produced for a given seed are part of this crate's output
//! contract, so the generators are implemented here rather than pulled from
//! a crate whose stream could shift between versions. Both algorithms are
//! public domain: splitmix64 (Steele, Lea, Flood) expands a 64-bit seed, and
//! xoshiro256++ (Blackman, Vigna) generates the stream. The unit tests pin
//! reference outputs so any change to the streams is caught.

/// splitmix64: a 64-bit state stepped by the golden-ratio constant, with an
/// output mixing function. Used to expand seeds for [`Xoshiro256PlusPlus`].
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Starts the sequence for a seed.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next value of the sequence.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256++ with 256 bits of state and 64-bit output.
#[derive(Clone, Debug)]
pub struct Xoshiro256PlusPlus {
    s: [u64; 4],
}

impl Xoshiro256PlusPlus {
    /// Builds a generator from raw state words. The all-zero state is a
    /// fixed point of the transition, so it is replaced by the splitmix64
    /// expansion of 0.
    pub fn from_seed_array(seed: [u64; 4]) -> Self {
        if seed == [0; 4] {
            return Self::seed_from_u64(0);
        }
        Self { s: seed }
    }

    /// Builds a generator by expanding a 64-bit seed through splitmix64,
    /// the seeding procedure recommended by the algorithm's authors.
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut mixer = SplitMix64::new(seed);
        let s = [mixer.next_u64(), mixer.next_u64(), mixer.next_u64(), mixer.next_u64()];
        Self { s }
    }

    /// Next 64-bit value of the stream.
    pub fn next_u64(&mut self) -> u64 {
        let result = (self.s[0].wrapping_add(self.s[3])).rotate_left(23).wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform double in [0, 1): the top 53 bits of the next output scaled
    /// by 2⁻⁵³.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / 9007199254740992.0;
        (self.next_u64() >> 11) as f64 * SCALE
    }
}
