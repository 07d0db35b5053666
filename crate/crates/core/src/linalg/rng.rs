//! Seedable counter-based pseudo-random stream.
//!
//! Every random ensemble in this crate draws from [`RngStream`], a splitmix64
//! generator written out in full so that a given seed yields the same draw
//! sequence on every platform and in every language that reimplements these
//! few lines.  The state is nothing but the seed and a draw counter, which
//! also makes cheap derived streams possible: parallel surveys hand each
//! sample index its own [`RngStream::substream`] and stay deterministic
//! regardless of scheduling.

use num_complex::Complex64;

/// Weyl-sequence increment of splitmix64 (the golden ratio in 64-bit fixed point).
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 output mixing function; bijective on `u64`.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random stream: a seed plus a position counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    position: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, position: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of `u64` draws taken from this stream so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Derives an independent stream for the given index.
    ///
    /// Children of one parent have distinct seeds (the derivation composes
    /// bijections with an xor), so per-index substreams never collide.
    pub fn substream(&self, index: u64) -> Self {
        Self::new(mix64(self.seed ^ mix64(GAMMA ^ index)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.position += 1;
        mix64(self.seed.wrapping_add(self.position.wrapping_mul(GAMMA)))
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * 2f64.powi(-53)
    }

    /// Uniform draw from `0..bound` without modulo bias.
    pub fn next_index(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "next_index bound must be positive");
        let b = bound as u64;
        // 2^64 mod b; draws at or below u64::MAX - rem fall in a whole number
        // of cycles of length b and can be reduced without bias.
        let rem = ((u64::MAX % b) + 1) % b;
        loop {
            let x = self.next_u64();
            if x <= u64::MAX - rem {
                return (x % b) as usize;
            }
        }
    }

    /// Pair of independent standard normal draws (Box-Muller transform).
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        // First uniform must avoid 0 so the logarithm stays finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * 2f64.powi(-53);
        let u2 = (self.next_u64() >> 11) as f64 * 2f64.powi(-53);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Single standard normal draw; consumes a full Box-Muller pair and keeps
    /// the cosine component so the stream position stays input-independent.
    pub fn next_normal(&mut self) -> f64 {
        self.next_normal_pair().0
    }

    /// Complex draw with independent standard normal real and imaginary parts.
    pub fn next_complex_normal(&mut self) -> Complex64 {
        let (re, im) = self.next_normal_pair();
        Complex64::new(re, im)
    }
}
