//! Deterministic random-number streams for parallel Monte Carlo.
//!
//! Streams are keyed by (global seed, trial id, step index) on top of
//! ChaCha8: the trial id selects a ChaCha stream and the step index selects
//! a block offset within it. Trials can run on any number of threads in any
//! order and still reproduce bit-identical records.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Words reserved per step; a measurement consumes only a handful.
const STEP_STRIDE_WORDS: u128 = 1 << 16;

/// Factory for per-trial and per-step generators derived from one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Streams {
    seed: u64,
}

impl Streams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Generator for one trial; draws advance sequentially within the trial.
    pub fn trial(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    /// Generator positioned at a fixed offset for (trial, step), so any
    /// step can be re-drawn independently of the rest of its trial.
    pub fn step(&self, trial: u64, step: u64) -> ChaCha8Rng {
        let mut rng = self.trial(trial);
        rng.set_word_pos(u128::from(step) * STEP_STRIDE_WORDS);
        rng
    }
}
