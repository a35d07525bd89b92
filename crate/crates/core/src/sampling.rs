//! Seeded, splittable shot sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};

/// Fixed seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 1729;

/// Shot budget and seed for an estimator; `shots == 0` selects exact mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub shots: u64,
    pub seed: u64,
}

impl Sampling {
    pub fn exact() -> Self {
        Sampling {
            shots: 0,
            seed: DEFAULT_SEED,
        }
    }

    pub fn shots(shots: u64, seed: u64) -> Self {
        Sampling { shots, seed }
    }

    pub fn is_exact(&self) -> bool {
        self.shots == 0
    }
}

/// A node in a tree of independent ChaCha streams derived from one seed.
/// Children are addressed by small integers, so sub-runs stay reproducible
/// no matter which other sub-runs execute.
#[derive(Clone, Copy, Debug)]
pub struct ShotSampler {
    seed: u64,
    path: u64,
}

impl ShotSampler {
    pub fn new(seed: u64) -> Self {
        ShotSampler { seed, path: 1 }
    }

    /// Child stream `k` (k < 255).
    pub fn child(&self, k: u64) -> Self {
        debug_assert!(k < 255);
        ShotSampler {
            seed: self.seed,
            path: self.path.wrapping_mul(256).wrapping_add(k + 1),
        }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.path);
        rng
    }

    /// Number of successes in `trials` Bernoulli(`p`) draws; `p` is clamped to [0, 1].
    pub fn binomial(&self, trials: u64, p: f64) -> u64 {
        let p = if p.is_nan() { 0.0 } else { p.clamp(0.0, 1.0) };
        if trials == 0 {
            return 0;
        }
        Binomial::new(trials, p)
            .expect("clamped probability")
            .sample(&mut self.rng())
    }
}

/// Success-probability estimate with a continuity-adjusted standard error
/// that stays positive at the boundaries.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Proportion {
    pub mean: f64,
    pub variance: f64,
}

impl Proportion {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let n = trials as f64;
        let mean = successes as f64 / n;
        let adjusted = (successes as f64 + 0.5) / (n + 1.0);
        Proportion {
            mean,
            variance: adjusted * (1.0 - adjusted) / n,
        }
    }
}
