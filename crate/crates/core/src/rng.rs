//! Seeded, splittable random streams.
//!
//! A stream is identified by a master seed and a path of 32-bit labels
//! (trial index, algorithm stage, repetition, ...). The pair is encoded
//! injectively into the key and stream id of a ChaCha8 generator, so two
//! distinct `(seed, path)` pairs never share a keystream. ChaCha is
//! counter-based: substreams need no coordination between threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Maximum path depth that fits the injective key encoding: six labels in the
/// key words plus one in the stream id.
pub const MAX_DEPTH: usize = 7;

/// Identifies a substream: master seed plus label path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub path: Vec<u32>,
}

impl SeedSpec {
    pub fn new(master_seed: u64) -> Self {
        SeedSpec {
            master_seed,
            path: Vec::new(),
        }
    }

    pub fn with_path(master_seed: u64, path: &[u32]) -> Self {
        assert!(path.len() <= MAX_DEPTH, "seed path deeper than {MAX_DEPTH}");
        SeedSpec {
            master_seed,
            path: path.to_vec(),
        }
    }

    /// This spec with `label` appended.
    pub fn child(&self, label: u32) -> Self {
        let mut path = self.path.clone();
        path.push(label);
        Self::with_path(self.master_seed, &path)
    }

    /// Builds the generator positioned at the start of this substream.
    pub fn derive(&self) -> Stream {
        derive(self)
    }
}

/// A random stream. Single-owner: move it between threads, never share it.
///
/// `Clone` duplicates the exact position, which is how tests replay an
/// algorithm on identical randomness.
#[derive(Debug, Clone)]
pub struct Stream {
    rng: ChaCha8Rng,
    seed: SeedSpec,
}

/// Builds the stream for `seed`. Deterministic across platforms.
pub fn derive(seed: &SeedSpec) -> Stream {
    assert!(seed.path.len() <= MAX_DEPTH, "seed path deeper than {MAX_DEPTH}");
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.master_seed.to_le_bytes());
    for (slot, label) in seed.path.iter().take(6).enumerate() {
        key[8 + 4 * slot..12 + 4 * slot].copy_from_slice(&label.to_le_bytes());
    }
    let last = seed.path.get(6).copied().unwrap_or(0);
    let stream_id = ((seed.path.len() as u64) << 32) | u64::from(last);
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream_id);
    Stream {
        rng,
        seed: seed.clone(),
    }
}

impl Stream {
    pub fn seed(&self) -> &SeedSpec {
        &self.seed
    }

    /// Independent child stream `(seed, path ++ [label])`. Does not advance `self`.
    pub fn substream(&self, label: u32) -> Stream {
        derive(&self.seed.child(label))
    }

    pub fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw from `{0, .., n-1}` (zero-based column index).
    ///
    /// Lemire's multiply-and-reject: one raw `u64` per attempt, rejections
    /// consume from this same stream.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn uniform_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "uniform_index needs n >= 1");
        let n = n as u64;
        let mut m = u128::from(self.next_u64()) * u128::from(n);
        if (m as u64) < n {
            let threshold = n.wrapping_neg() % n;
            while (m as u64) < threshold {
                m = u128::from(self.next_u64()) * u128::from(n);
            }
        }
        (m >> 64) as usize
    }

    /// Fair sign in `{-1, +1}`.
    pub fn bernoulli_sign(&mut self) -> f64 {
        if self.next_u32() >> 31 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Fills `out` with zero-based uniform indices below `n`.
    pub fn fill_indices(&mut self, n: usize, out: &mut [usize]) {
        for slot in out {
            *slot = self.uniform_index(n);
        }
    }
}
