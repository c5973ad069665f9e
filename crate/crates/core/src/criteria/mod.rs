//! Information criteria and Bayes-factor selection rules.
//!
//! All criteria are oriented so that smaller is better. Bayes factors are
//! turned into criteria as `−2 log BF`.

mod bayes;
mod classical;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use bayes::{
    evidence_gamma_fixed_log, log_bf_akaike_prior, log_bf_bic_prior, log_bf_gamma_marginal,
    log_bf_robust_exact, log_bf_wide_gamma_prior, log_evidence_gamma_marginal, log_evidence_radial,
    log_gamma_prior, robust_bic_asymptotic, robust_bic_large_k,
};
pub use classical::{aic, aicc, bic};

use crate::linmodel::FitDecomposition;
use crate::{Error, Result};

/// The selection rules compared in the simulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Aic,
    Aicc,
    Bic,
    RobustExact,
    RobustAsymptotic,
    RobustLargeK,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Aic,
        Criterion::Aicc,
        Criterion::Bic,
        Criterion::RobustExact,
        Criterion::RobustAsymptotic,
        Criterion::RobustLargeK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Aic => "AIC",
            Criterion::Aicc => "AICc",
            Criterion::Bic => "BIC",
            Criterion::RobustExact => "RobustExact",
            Criterion::RobustAsymptotic => "RobustAsymptotic",
            Criterion::RobustLargeK => "RobustLargeK",
        }
    }

    /// Criterion value for one model size. `f_sq + chi_sq` must equal `z_sq`.
    pub fn evaluate(self, chi_sq: f64, f_sq: f64, z_sq: f64, k: usize, n: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        if k > n {
            return Err(Error::Overparameterized { k, n });
        }
        match self {
            Criterion::Aic => Ok(aic(chi_sq, k)),
            Criterion::Aicc => Ok(aicc(chi_sq, k, n)),
            Criterion::Bic => Ok(bic(chi_sq, k, n)),
            Criterion::RobustExact => Ok(-2.0 * log_bf_robust_exact(f_sq, z_sq, k, n)?),
            Criterion::RobustAsymptotic => robust_bic_asymptotic(chi_sq, f_sq, k),
            Criterion::RobustLargeK => robust_bic_large_k(chi_sq, f_sq, k),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or(Error::Config("unknown criterion name"))
    }
}

/// 1-based index of the smallest value; ties go to the smaller K and
/// non-finite entries are skipped.
pub fn argmin_k(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            continue;
        }
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((i + 1, v));
        }
    }
    best.map(|(k, _)| k)
}

/// One criterion evaluated at `K = 1, …, values.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub values: Vec<f64>,
    /// `None` when no value is finite, e.g. AICc with too few points.
    pub selected_k: Option<usize>,
}

impl CriterionResult {
    pub fn from_values(criterion: Criterion, values: Vec<f64>) -> Self {
        let selected_k = argmin_k(&values);
        Self {
            criterion,
            values,
            selected_k,
        }
    }
}

/// All requested criteria over a nested sequence of models.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionProfile {
    pub n: usize,
    pub z_sq: f64,
    pub chi_sq: Vec<f64>,
    pub f_sq: Vec<f64>,
    pub results: Vec<CriterionResult>,
}

impl CriterionProfile {
    /// Evaluates `criteria` from per-K residual and signal sums.
    pub fn from_sums(
        chi_sq: Vec<f64>,
        f_sq: Vec<f64>,
        z_sq: f64,
        n: usize,
        criteria: &[Criterion],
    ) -> Result<Self> {
        if chi_sq.len() != f_sq.len() || chi_sq.is_empty() {
            return Err(Error::Config(
                "sum sequences must be non-empty and of equal length",
            ));
        }
        if chi_sq.len() > n {
            return Err(Error::Overparameterized { k: chi_sq.len(), n });
        }
        let mut results = Vec::with_capacity(criteria.len());
        for &c in criteria {
            let values = chi_sq
                .iter()
                .zip(&f_sq)
                .enumerate()
                .map(|(i, (&chi, &f))| c.evaluate(chi, f, z_sq, i + 1, n))
                .collect::<Result<Vec<f64>>>()?;
            results.push(CriterionResult::from_values(c, values));
        }
        Ok(Self {
            n,
            z_sq,
            chi_sq,
            f_sq,
            results,
        })
    }

    /// Profile over fits ordered by `K = 1, 2, …`.
    pub fn from_fits(fits: &[FitDecomposition], n: usize, criteria: &[Criterion]) -> Result<Self> {
        if fits.iter().enumerate().any(|(i, f)| f.k != i + 1) {
            return Err(Error::Config(
                "fits must run over K = 1, 2, ... without gaps",
            ));
        }
        let z_sq = fits
            .first()
            .map(|f| f.z_sq)
            .ok_or(Error::Config("no fits given"))?;
        let chi = fits.iter().map(|f| f.chi_sq).collect();
        let sig = fits.iter().map(|f| f.f_sq).collect();
        Self::from_sums(chi, sig, z_sq, n, criteria)
    }

    pub fn get(&self, criterion: Criterion) -> Option<&CriterionResult> {
        self.results.iter().find(|r| r.criterion == criterion)
    }

    pub fn max_k(&self) -> usize {
        self.chi_sq.len()
    }
}

/// All six criteria over the given fits.
pub fn build_profile(fits: &[FitDecomposition], n: usize) -> Result<CriterionProfile> {
    CriterionProfile::from_fits(fits, n, &Criterion::ALL)
}
