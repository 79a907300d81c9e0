//! Counter-based random numbers.
//!
//! Every random decision in the crate is a pure function of a 64-bit key and
//! a 64-bit counter: `value(key, i) = splitmix64_finalize(key + (i + 1) * γ)`
//! with `γ = 0x9E3779B97F4A7C15`. This is exactly the `i`-th output of a
//! SplitMix64 generator started at state `key`, but any output can be read
//! without generating the ones before it. Edge sampling uses the pair index
//! as the counter, so graphs do not depend on iteration order or on how work
//! is split across threads.
//!
//! Keys are derived from a master seed and a domain tag so that different
//! consumers of the same seed (edge sampling, per-trial seeds, probe
//! selection) draw from unrelated streams.

use rand::RngCore;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Domain tags.
pub mod domain {
    pub const GNP_EDGES: u64 = 0x676e_705f_6564_6765;
    pub const LAYERED_EDGES: u64 = 0x6c61_7965_725f_6564;
    pub const TRIAL_SEED: u64 = 0x7472_6961_6c5f_7364;
    pub const PROBES: u64 = 0x7072_6f62_6573_5f5f;
}

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random-access stream of 64-bit values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64, domain: u64) -> Self {
        CounterRng { key: mix64(seed ^ mix64(domain)) }
    }

    #[inline]
    pub fn u64_at(&self, counter: u64) -> u64 {
        mix64(self.key.wrapping_add(counter.wrapping_add(1).wrapping_mul(GAMMA)))
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn f64_at(&self, counter: u64) -> f64 {
        (self.u64_at(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p`; exact at `p = 0` and `p = 1`.
    #[inline]
    pub fn bernoulli_at(&self, counter: u64, p: f64) -> bool {
        self.f64_at(counter) < p
    }

    /// A sequential generator over this stream, starting at counter 0.
    pub fn stream(&self) -> Stream {
        Stream { rng: *self, counter: 0 }
    }
}

/// Sequential view of a [`CounterRng`], usable wherever `rand` wants an
/// `RngCore`.
#[derive(Clone, Debug)]
pub struct Stream {
    rng: CounterRng,
    counter: u64,
}

impl Stream {
    pub fn new(seed: u64, domain: u64) -> Self {
        CounterRng::new(seed, domain).stream()
    }

    pub fn next_f64(&mut self) -> f64 {
        let x = self.rng.f64_at(self.counter);
        self.counter += 1;
        x
    }
}

impl RngCore for Stream {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        let x = self.rng.u64_at(self.counter);
        self.counter += 1;
        x
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}

/// Seed for trial `index` of a campaign keyed by `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    CounterRng::new(master, domain::TRIAL_SEED).u64_at(index)
}

/// Index of the unordered pair `{u, v}`, `u < v`, in the enumeration
/// `(0,1), (0,2), (1,2), (0,3), ...` (grouped by the larger endpoint).
#[inline]
pub fn pair_index(u: usize, v: usize) -> u64 {
    debug_assert!(u < v);
    let v = v as u64;
    v * (v - 1) / 2 + u as u64
}
