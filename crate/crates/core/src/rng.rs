//! Deterministic, platform-independent random streams.
//!
//! Every variate in the crate is derived from a [`RngSpec`], a pair of a
//! master seed and a stream id. The generator is SplitMix64: the state is
//! initialised by mixing both words through the SplitMix64 finalizer and
//! advanced by the golden-ratio increment. Uniform reals take the top 53
//! bits of each output, so a stream of `f64`s is bit-identical on every
//! platform.

use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const UNIT_53: f64 = 1.0 / (1u64 << 53) as f64;

/// SplitMix64 finalizer (Stafford variant 13).
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of words into a single 64-bit stream id.
pub fn mix_words(words: &[u64]) -> u64 {
    words.iter().fold(mix64(GOLDEN_GAMMA), |h, &w| {
        mix64(h ^ mix64(w.wrapping_add(GOLDEN_GAMMA)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngSpec {
            master_seed,
            stream_id,
        }
    }

    /// Derives a child spec whose stream id mixes `words`; used for per-trial streams.
    pub fn derive(master_seed: u64, words: &[u64]) -> Self {
        RngSpec::new(master_seed, mix_words(words))
    }

    pub fn stream(&self) -> SplitMix64 {
        let state = mix64(self.master_seed ^ mix64(self.stream_id.wrapping_add(GOLDEN_GAMMA)));
        SplitMix64 { state }
    }

    /// A keyed hash for counter-based variates: the same (spec, counter)
    /// always yields the same word, independent of evaluation order.
    #[inline]
    pub fn hash_counter(&self, counter: u64) -> u64 {
        let key = mix64(self.master_seed ^ mix64(self.stream_id.wrapping_add(GOLDEN_GAMMA)));
        mix64(key ^ mix64(counter.wrapping_mul(GOLDEN_GAMMA).wrapping_add(1)))
    }
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform on `[0, 1)` with 53 random mantissa bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        unit_f64(self.next_u64())
    }

    /// Exponential with rate 1 by inversion, `-ln(1 - U)`.
    #[inline]
    pub fn next_exp1(&mut self) -> f64 {
        -(-self.next_f64()).ln_1p()
    }

    /// Uniform integer on `{1, ..., upper}`; `upper` must be at least 1.
    #[inline]
    pub fn next_int_inclusive(&mut self, upper: u64) -> u64 {
        bounded(upper, || self.next_u64()) + 1
    }
}

#[inline]
pub(crate) fn unit_f64(word: u64) -> f64 {
    (word >> 11) as f64 * UNIT_53
}

/// Unbiased draw from `{0, ..., range-1}` by widening multiply with rejection.
#[inline]
pub(crate) fn bounded(range: u64, mut next: impl FnMut() -> u64) -> u64 {
    debug_assert!(range > 0);
    let threshold = range.wrapping_neg() % range;
    loop {
        let product = (next() as u128) * (range as u128);
        if (product as u64) >= threshold {
            return (product >> 64) as u64;
        }
    }
}
