//! Monte Carlo success-rate experiments on the cosine design.
//!
//! Each replicate draws `φ_k` and `ε_n(S)` once and reuses them for every
//! generating size `S = 1, …, N`. A criterion scores a success for `S` when
//! its selected `K` equals `S`. Replicates are independent and their tallies
//! are plain integer counts, so any grouping of replicates merges to the
//! same table.

mod analytic;
mod draw;

use alloc::vec;
use alloc::vec::Vec;

pub use analytic::{analytic_estimates, criterion_curves, AnalyticEstimates, CurvePoint};
pub use draw::{
    cosine_basis, cosine_design, generate_draw, sample_points, stream_rng, ModeSums, Role, SimDraw,
};

use crate::criteria::{argmin_k, Criterion};
use crate::{Error, Matrix, Result};

pub const DEFAULT_SEED: u64 = 0xD1CE;
pub const DEFAULT_N: usize = 32;
pub const DEFAULT_REPLICATES: u64 = 4096;

/// Criteria compared by default.
pub const DEFAULT_CRITERIA: [Criterion; 4] = [
    Criterion::RobustLargeK,
    Criterion::Aic,
    Criterion::Bic,
    Criterion::Aicc,
];

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub replicates: u64,
    pub seed: u64,
    pub criteria: Vec<Criterion>,
}

impl SimConfig {
    pub fn new(n: usize, a: f64, b: f64, replicates: u64, seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            a,
            b,
            replicates,
            seed,
            criteria: DEFAULT_CRITERIA.to_vec(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_criteria(mut self, criteria: &[Criterion]) -> Result<Self> {
        self.criteria = criteria.to_vec();
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config("N must be at least 2"));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1"));
        }
        if !(self.a >= 0.0 && self.a.is_finite() && self.b >= 0.0 && self.b.is_finite()) {
            return Err(Error::Config("amplitudes a and b must be finite and >= 0"));
        }
        if self.criteria.is_empty() {
            return Err(Error::Config("at least one criterion is required"));
        }
        Ok(())
    }
}

/// Success counts, indexed `[criterion][S − 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub replicates: u64,
    pub successes: Vec<Vec<u64>>,
}

impl Tally {
    pub fn empty(criteria: usize, n: usize) -> Self {
        Self {
            replicates: 0,
            successes: vec![vec![0; n]; criteria],
        }
    }

    pub fn merge(mut self, other: &Tally) -> Self {
        self.replicates += other.replicates;
        for (mine, theirs) in self.successes.iter_mut().zip(&other.successes) {
            for (m, t) in mine.iter_mut().zip(theirs) {
                *m += t;
            }
        }
        self
    }
}

/// Scores one replicate.
pub fn replicate_tally(config: &SimConfig, design: &Matrix, replicate: u64) -> Result<Tally> {
    let n = config.n;
    let draw = generate_draw(config, design, replicate);
    let mut tally = Tally::empty(config.criteria.len(), n);
    tally.replicates = 1;
    let mut values = vec![0.0; n];
    for s in 1..=n {
        let sums = draw.mode_sums(s);
        for (ci, &c) in config.criteria.iter().enumerate() {
            for k in 1..=n {
                values[k - 1] =
                    c.evaluate(sums.chi_sq[k - 1], sums.f_sq[k - 1], sums.z_sq, k, n)?;
            }
            if argmin_k(&values) == Some(s) {
                tally.successes[ci][s - 1] += 1;
            }
        }
    }
    Ok(tally)
}

/// Scores replicates `range` in order.
pub fn tally_range(
    config: &SimConfig,
    design: &Matrix,
    range: core::ops::Range<u64>,
) -> Result<Tally> {
    let mut total = Tally::empty(config.criteria.len(), config.n);
    for r in range {
        total = total.merge(&replicate_tally(config, design, r)?);
    }
    Ok(total)
}

/// Success proportions per criterion and generating size.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessTable {
    pub config: SimConfig,
    pub successes: Vec<Vec<u64>>,
    pub rates: Vec<Vec<f64>>,
    pub std_errors: Vec<Vec<f64>>,
}

impl SuccessTable {
    pub fn from_tally(config: SimConfig, tally: Tally) -> Result<Self> {
        if tally.replicates != config.replicates
            || tally.successes.len() != config.criteria.len()
            || tally.successes.iter().any(|row| row.len() != config.n)
        {
            return Err(Error::Config("tally does not match the configuration"));
        }
        let reps = config.replicates as f64;
        let rates: Vec<Vec<f64>> = tally
            .successes
            .iter()
            .map(|row| row.iter().map(|&c| c as f64 / reps).collect())
            .collect();
        let std_errors = rates
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&p| libm::sqrt(p * (1.0 - p) / reps))
                    .collect()
            })
            .collect();
        Ok(Self {
            config,
            successes: tally.successes,
            rates,
            std_errors,
        })
    }

    fn index(&self, criterion: Criterion) -> Option<usize> {
        self.config.criteria.iter().position(|&c| c == criterion)
    }

    /// Success rate at generating size `s` (1-based).
    pub fn rate(&self, criterion: Criterion, s: usize) -> Option<f64> {
        self.rates
            .get(self.index(criterion)?)?
            .get(s.checked_sub(1)?)
            .copied()
    }

    pub fn std_error(&self, criterion: Criterion, s: usize) -> Option<f64> {
        self.std_errors
            .get(self.index(criterion)?)?
            .get(s.checked_sub(1)?)
            .copied()
    }
}

/// Runs the whole experiment sequentially.
pub fn run_success_experiment(config: &SimConfig) -> Result<SuccessTable> {
    config.validate()?;
    let design = cosine_design(config.n);
    let tally = tally_range(config, &design, 0..config.replicates)?;
    SuccessTable::from_tally(config.clone(), tally)
}

/// Running means and variances of `F²_{K|S}`, `χ²_{K|S}` and `z²(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumMoments {
    n: usize,
    count: u64,
    f_sq: Vec<(f64, f64)>,
    chi_sq: Vec<(f64, f64)>,
    z_sq: Vec<(f64, f64)>,
}

impl SumMoments {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            count: 0,
            f_sq: vec![(0.0, 0.0); n * n],
            chi_sq: vec![(0.0, 0.0); n * n],
            z_sq: vec![(0.0, 0.0); n],
        }
    }

    pub fn add(&mut self, draw: &SimDraw) {
        let n = self.n;
        self.count += 1;
        for s in 1..=n {
            let m = draw.mode_sums(s);
            push(&mut self.z_sq[s - 1], m.z_sq);
            for k in 1..=n {
                push(&mut self.f_sq[(k - 1) * n + s - 1], m.f_sq[k - 1]);
                push(&mut self.chi_sq[(k - 1) * n + s - 1], m.chi_sq[k - 1]);
            }
        }
    }

    /// Mean and standard error of the mean of `F²_{K|S}`.
    pub fn f_sq(&self, k: usize, s: usize) -> (f64, f64) {
        self.summary(self.f_sq[(k - 1) * self.n + s - 1])
    }

    pub fn chi_sq(&self, k: usize, s: usize) -> (f64, f64) {
        self.summary(self.chi_sq[(k - 1) * self.n + s - 1])
    }

    pub fn z_sq(&self, s: usize) -> (f64, f64) {
        self.summary(self.z_sq[s - 1])
    }

    fn summary(&self, (sum, sum_sq): (f64, f64)) -> (f64, f64) {
        let c = self.count as f64;
        let mean = sum / c;
        let var = (sum_sq / c - mean * mean).max(0.0) * c / (c - 1.0).max(1.0);
        (mean, libm::sqrt(var / c))
    }
}

fn push(slot: &mut (f64, f64), v: f64) {
    slot.0 += v;
    slot.1 += v * v;
}
