//! Deterministic pseudo-random streams.
//!
//! The generator is SplitMix64: the state advances by `0x9E3779B97F4A7C15`
//! and each output is the state passed through the finalizer
//! `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`.
//! Independent streams are keyed by `(seed, tag, index)`; see [`SplitMix64::stream`].

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
pub const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
pub const MIX2: u64 = 0x94D0_49BB_1331_11EB;

/// Stream tags, one per randomized phase.
pub mod tags {
    pub const ORBIT: u64 = 1;
    pub const COROLLARY: u64 = 2;
    pub const PROPERTY_D: u64 = 3;
    pub const TEST: u64 = 99;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX1);
    z = (z ^ (z >> 27)).wrapping_mul(MIX2);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream for one task: the state is `mix(mix(seed ^ mix(tag)) ^ index)`.
    pub fn stream(seed: u64, tag: u64, index: u64) -> Self {
        SplitMix64::new(mix(mix(seed ^ mix(tag)) ^ index))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, n)` by rejection; `n > 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in `[1, n]`.
    pub fn nonzero_up_to(&mut self, n: u64) -> u64 {
        1 + self.below(n)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}
