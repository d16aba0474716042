//! Seeded random step functions for empirical checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::functions::{DecreasingStep, StepFunction};

/// Deterministic source of random nonnegative step functions.
///
/// Breakpoints are log-uniform in `[10^decades_lo, 10^decades_hi]`, values
/// log-uniform over two decades.
#[derive(Debug, Clone)]
pub struct StepSampler {
    rng: ChaCha8Rng,
    pub max_pieces: usize,
    pub decades_lo: f64,
    pub decades_hi: f64,
}

impl StepSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), max_pieces: 6, decades_lo: -3.0, decades_hi: 3.0 }
    }

    fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        10f64.powf(self.rng.gen_range(lo..hi))
    }

    fn breaks(&mut self, n: usize) -> Vec<f64> {
        let mut xs: Vec<f64> = (0..n).map(|_| self.log_uniform(self.decades_lo, self.decades_hi)).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut breaks = vec![0.0];
        breaks.extend(xs);
        breaks
    }

    /// A step function with up to `max_pieces` pieces; some pieces may be 0.
    pub fn step(&mut self) -> StepFunction {
        let n = self.rng.gen_range(1..=self.max_pieces);
        let breaks = self.breaks(n);
        let values = (1..breaks.len())
            .map(|_| if self.rng.gen_bool(0.2) { 0.0 } else { self.log_uniform(-1.0, 1.0) })
            .collect();
        StepFunction::new(breaks, values).expect("sampled breaks are increasing")
    }

    /// A nonincreasing step function with positive values.
    pub fn decreasing(&mut self) -> DecreasingStep {
        let n = self.rng.gen_range(1..=self.max_pieces);
        let breaks = self.breaks(n);
        let mut values: Vec<f64> = (1..breaks.len()).map(|_| self.log_uniform(-1.0, 1.0)).collect();
        values.sort_by(|a, b| b.total_cmp(a));
        DecreasingStep::new(StepFunction::new(breaks, values).expect("sampled breaks are increasing"))
            .expect("values sorted decreasing")
    }

    /// `χ_(0,a)` with `a` log-uniform in `[10^lo, 10^hi]`.
    pub fn indicator(&mut self, lo: f64, hi: f64) -> StepFunction {
        StepFunction::indicator(self.log_uniform(lo, hi))
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}
