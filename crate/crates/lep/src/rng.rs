//! Reproducible per-sample random streams.
//!
//! Each sample owns an independent stream addressed by `(master_seed,
//! sample_index)`: the master seed fixes the ChaCha8 key and the sample index
//! selects the cipher stream, so stream `i` never depends on streams `0..i`.
//! This makes any partitioning of samples across workers bit-reproducible.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::explorer::Color;

/// Counter-based random stream for one sample.
pub struct RngStream {
    inner: ChaCha8Rng,
    bit_buf: u64,
    bits_left: u32,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    /// Stream for sample `sample_index` under `master_seed`.
    pub fn new(master_seed: u64, sample_index: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = master_seed;
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(sample_index);
        RngStream { inner, bit_buf: 0, bits_left: 0 }
    }

    /// One fair bit.
    #[inline]
    pub fn bit(&mut self) -> bool {
        if self.bits_left == 0 {
            self.bit_buf = self.inner.next_u64();
            self.bits_left = 64;
        }
        let b = self.bit_buf & 1 != 0;
        self.bit_buf >>= 1;
        self.bits_left -= 1;
        b
    }

    /// One fair color.
    #[inline]
    pub fn color(&mut self) -> Color {
        if self.bit() {
            Color::White
        } else {
            Color::Black
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform variate in [0, 1).
    pub fn uniform01(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
