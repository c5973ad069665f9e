//! Expected sums for the simulated datasets and the criterion curves built
//! from them.

use alloc::vec::Vec;

use crate::criteria::{aic, bic, log_bf_robust_exact, robust_bic_large_k};
use crate::{Error, Result};

/// Replicate-averaged sums for model size `K` on data generated with `S`
/// signal terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticEstimates {
    pub e_f_sq: f64,
    pub e_chi_sq: f64,
    pub e_z_sq: f64,
    /// Expected squared mode for a model component, reading the prior
    /// `Δ²/2 + γ²/K` with unit noise and `γ² = (a²+b²)·min(K,S)`.
    pub e_beta_sq_model: f64,
    /// Expected squared mode for a noise component under the unit-noise
    /// prior.
    pub e_beta_sq_noise: f64,
}

/// Expected `F²`, `χ²`, `z²` and per-component mode sizes.
pub fn analytic_estimates(
    a: f64,
    b: f64,
    n: usize,
    s: usize,
    k: usize,
) -> Result<AnalyticEstimates> {
    if k == 0 || s == 0 {
        return Err(Error::ZeroDimension);
    }
    if k > n || s > n {
        return Err(Error::Overparameterized { k: k.max(s), n });
    }
    if !(a >= 0.0 && b >= 0.0) {
        return Err(Error::Config("amplitudes must be >= 0"));
    }
    let power = a * a + b * b;
    let kf = k as f64;
    let e_f_sq = power * k.min(s) as f64 + kf;
    let e_chi_sq = (n - k) as f64 + power * s.saturating_sub(k) as f64;
    Ok(AnalyticEstimates {
        e_f_sq,
        e_chi_sq,
        e_z_sq: power * s as f64 + n as f64,
        e_beta_sq_model: e_f_sq / kf,
        e_beta_sq_noise: 1.0,
    })
}

/// Criteria evaluated on the expected sums at one `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub k: usize,
    pub e_chi_sq: f64,
    pub e_f_sq: f64,
    pub aic: f64,
    pub bic: f64,
    pub robust_large_k: f64,
    pub robust_exact: f64,
}

/// Analytic criterion curves for `K` in `k_min..=k_max`.
pub fn criterion_curves(
    a: f64,
    b: f64,
    n: usize,
    s: usize,
    k_min: usize,
    k_max: usize,
) -> Result<Vec<CurvePoint>> {
    if k_min == 0 || k_min > k_max {
        return Err(Error::Config("K range must satisfy 1 <= k_min <= k_max"));
    }
    (k_min..=k_max)
        .map(|k| {
            let e = analytic_estimates(a, b, n, s, k)?;
            Ok(CurvePoint {
                k,
                e_chi_sq: e.e_chi_sq,
                e_f_sq: e.e_f_sq,
                aic: aic(e.e_chi_sq, k),
                bic: bic(e.e_chi_sq, k, n),
                robust_large_k: robust_bic_large_k(e.e_chi_sq, e.e_f_sq, k)?,
                robust_exact: -2.0 * log_bf_robust_exact(e.e_f_sq, e.e_z_sq, k, n)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argmin(values: impl Iterator<Item = (usize, f64)>) -> usize {
        values
            .fold(
                (0, f64::INFINITY),
                |best, (k, v)| if v < best.1 { (k, v) } else { best },
            )
            .0
    }

    #[test]
    fn expected_residuals() {
        let chi = |a, k| analytic_estimates(a, 0.0, 32, 8, k).unwrap().e_chi_sq;
        assert_eq!([chi(3.0, 4), chi(3.0, 8), chi(3.0, 12)], [64.0, 24.0, 20.0]);
        assert_eq!([chi(1.0, 4), chi(1.0, 8), chi(1.0, 12)], [32.0, 24.0, 20.0]);
        for k in 8..=32 {
            assert_eq!(chi(7.0, k), (32 - k) as f64);
        }
    }

    #[test]
    fn sums_are_complementary() {
        for k in 1..=16 {
            for s in 1..=16 {
                let e = analytic_estimates(1.3, 0.4, 16, s, k).unwrap();
                assert!((e.e_f_sq + e.e_chi_sq - e.e_z_sq).abs() < 1e-12);
                assert!((e.e_beta_sq_model * k as f64 - e.e_f_sq).abs() < 1e-12);
            }
        }
        assert!(analytic_estimates(1.0, 0.0, 8, 9, 2).is_err());
        assert!(analytic_estimates(1.0, 0.0, 8, 2, 0).is_err());
    }

    #[test]
    fn strong_signal_curves_bottom_out_at_s() {
        let c = criterion_curves(3.0, 0.0, 32, 8, 1, 32).unwrap();
        assert_eq!(argmin(c.iter().map(|p| (p.k, p.aic))), 8);
        assert_eq!(argmin(c.iter().map(|p| (p.k, p.bic))), 8);
        assert_eq!(argmin(c.iter().map(|p| (p.k, p.robust_large_k))), 8);
    }

    #[test]
    fn weak_signal_curves() {
        let c = criterion_curves(1.0, 0.0, 32, 8, 1, 32).unwrap();
        assert_eq!(argmin(c.iter().map(|p| (p.k, p.robust_large_k))), 8);
        let at = |k: usize| c[k - 1];
        assert!((at(7).aic - at(9).aic).abs() < 2.0);
        // BIC keeps rising past S instead of dipping there.
        assert!(at(8).bic < at(12).bic);
        assert_eq!(argmin(c.iter().map(|p| (p.k, p.bic))), 1);
    }

    #[test]
    fn bad_ranges() {
        assert!(criterion_curves(1.0, 0.0, 32, 8, 0, 3).is_err());
        assert!(criterion_curves(1.0, 0.0, 32, 8, 5, 3).is_err());
        assert!(criterion_curves(1.0, 0.0, 32, 8, 30, 33).is_err());
    }
}
