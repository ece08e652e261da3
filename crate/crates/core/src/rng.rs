//! Seeded generator used for sampled identity checks.
//!
//! SplitMix64 (Steele, Lea, Flood) with the standard constants. The state
//! advances by `0x9E3779B97F4A7C15`; the output is mixed with
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`. A draw in `0..n` is
//! `next_u64() % n`. Any implementation following these three lines
//! reproduces our sampled triples exactly.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..n` (plain modulo reduction).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Independent stream derived from this one.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }
}
