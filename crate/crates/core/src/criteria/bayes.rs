//! Log Bayes factors against the saturated `K = N` reference model.
//!
//! Every evidence here is a log-value relative to the likelihood constant
//! `C`, which cancels in each ratio. The robust forms come from a
//! noncentral Gamma prior on the model radius with its noncentrality `γ`
//! marginalized under a half-Gaussian of width `σ_γ`:
//!
//! ```text
//! fixed γ:      (1+Δ²)^{-N/2} exp[-(γ²+z²)/2(1+Δ²)] ₀F₁(K/2; γ²F²/4(1+Δ²)²)
//! marginal γ:   ∝ ₁F₁(½; K/2; σ²F²/2(1+Δ²)(1+Δ²+σ²))
//! σ_γ → ∞:      BF = ₁F₁(½; K/2; F²/2(1+Δ²)) / ₁F₁(½; N/2; z²/2(1+Δ²))
//! Δ → 0:        BF = ₁F₁(½; K/2; F²/2) / ₁F₁(½; N/2; z²/2)
//! ```

use crate::specfun::{ln_gamma, log_0f1, log_1f1};
use crate::{Error, Result};

fn check_dims(k: usize, n: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if k > n {
        return Err(Error::Overparameterized { k, n });
    }
    Ok(())
}

/// Gaussian model prior of variance `N`, noise parameters pinned at zero:
/// `((N−K)/2)·ln(N+1) − N χ² / (2(N+1))`.
pub fn log_bf_bic_prior(chi_sq: f64, k: usize, n: usize) -> Result<f64> {
    check_dims(k, n)?;
    let nf = n as f64;
    Ok(0.5 * (n - k) as f64 * libm::log(nf + 1.0) - nf * chi_sq / (2.0 * (nf + 1.0)))
}

/// Gaussian model prior of scale `Δ` and noise prior of scale `δ`:
/// `(L/2)·ln((1+Δ²)/(1+δ²)) − (1/(1+δ²) − 1/(1+Δ²))·χ²/2` with `L = N−K`.
pub fn log_bf_akaike_prior(
    chi_sq: f64,
    k: usize,
    n: usize,
    delta: f64,
    big_delta: f64,
) -> Result<f64> {
    check_dims(k, n)?;
    if !(delta > 0.0) || !(big_delta > 0.0) {
        return Err(Error::Domain("Akaike prior scales must be > 0"));
    }
    let noise = 1.0 + delta * delta;
    let model = 1.0 + big_delta * big_delta;
    let l = (n - k) as f64;
    Ok(0.5 * l * libm::log(model / noise) - (1.0 / noise - 1.0 / model) * chi_sq / 2.0)
}

/// Exact robust log Bayes factor,
/// `log ₁F₁(½; K/2; F²/2) − log ₁F₁(½; N/2; z²/2)`.
pub fn log_bf_robust_exact(f_sq: f64, z_sq: f64, k: usize, n: usize) -> Result<f64> {
    check_dims(k, n)?;
    if !(f_sq >= 0.0) || !(z_sq >= 0.0) {
        return Err(Error::Domain("signal and data norms must be >= 0"));
    }
    if k == n {
        return Ok(0.0);
    }
    Ok(log_1f1(0.5, k as f64 / 2.0, f_sq / 2.0)? - log_1f1(0.5, n as f64 / 2.0, z_sq / 2.0)?)
}

/// Large-N robust BIC, `χ² + (K−1)·ln(F²/2) − 2 ln Γ(K/2)`.
pub fn robust_bic_asymptotic(chi_sq: f64, f_sq: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let kf = k as f64;
    if k == 1 {
        return Ok(chi_sq - 2.0 * ln_gamma(0.5));
    }
    if !(f_sq > 0.0) {
        return Err(Error::DegenerateSignal { k });
    }
    Ok(chi_sq + (kf - 1.0) * libm::log(f_sq / 2.0) - 2.0 * ln_gamma(kf / 2.0))
}

/// Large-K robust BIC, `χ² + K·ln(F²/K) + K`.
pub fn robust_bic_large_k(chi_sq: f64, f_sq: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(f_sq > 0.0) {
        return Err(Error::DegenerateSignal { k });
    }
    let kf = k as f64;
    Ok(chi_sq + kf * libm::log(f_sq / kf) + kf)
}

/// Log-evidence with separate noise (`δ`) and model (`Δ`) scales at fixed `γ`.
pub fn log_evidence_radial(
    f_sq: f64,
    chi_sq: f64,
    k: usize,
    l: usize,
    delta: f64,
    big_delta: f64,
    gamma: f64,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(delta >= 0.0 && big_delta >= 0.0 && gamma >= 0.0) {
        return Err(Error::Domain("prior scales must be >= 0"));
    }
    let noise = 1.0 + delta * delta;
    let model = 1.0 + big_delta * big_delta;
    let g2 = gamma * gamma;
    Ok(-0.5 * l as f64 * libm::log(noise)
        - 0.5 * k as f64 * libm::log(model)
        - chi_sq / (2.0 * noise)
        - (g2 + f_sq) / (2.0 * model)
        + log_0f1(k as f64 / 2.0, g2 * f_sq / (4.0 * model * model))?)
}

/// Log-evidence with `δ = Δ` at fixed `γ`:
/// `−(N/2)·ln(1+Δ²) − (γ²+z²)/(2(1+Δ²)) + log ₀F₁(K/2; γ²F²/(4(1+Δ²)²))`.
pub fn evidence_gamma_fixed_log(
    f_sq: f64,
    z_sq: f64,
    k: usize,
    n: usize,
    big_delta: f64,
    gamma: f64,
) -> Result<f64> {
    check_dims(k, n)?;
    if !(big_delta >= 0.0) || !(gamma >= 0.0) {
        return Err(Error::Domain("Delta and gamma must be >= 0"));
    }
    let s = 1.0 + big_delta * big_delta;
    let g2 = gamma * gamma;
    let mut v = -0.5 * n as f64 * libm::log(s) - (g2 + z_sq) / (2.0 * s);
    if g2 > 0.0 {
        v += log_0f1(k as f64 / 2.0, g2 * f_sq / (4.0 * s * s))?;
    }
    Ok(v)
}

/// Half-Gaussian log-density of `γ ≥ 0` with width `σ_γ`.
pub fn log_gamma_prior(gamma: f64, sigma_gamma: f64) -> Result<f64> {
    if !(sigma_gamma > 0.0) || !(gamma >= 0.0) {
        return Err(Error::Domain(
            "gamma prior needs sigma_gamma > 0 and gamma >= 0",
        ));
    }
    let s2 = sigma_gamma * sigma_gamma;
    Ok(0.5 * libm::log(2.0 / (core::f64::consts::PI * s2)) - gamma * gamma / (2.0 * s2))
}

fn marginal_weight(big_delta: f64, sigma_gamma: f64) -> f64 {
    let s = 1.0 + big_delta * big_delta;
    let s2 = sigma_gamma * sigma_gamma;
    s2 / (2.0 * s * (s + s2))
}

/// Log-evidence with `γ` integrated against its half-Gaussian prior.
pub fn log_evidence_gamma_marginal(
    f_sq: f64,
    z_sq: f64,
    k: usize,
    n: usize,
    big_delta: f64,
    sigma_gamma: f64,
) -> Result<f64> {
    check_dims(k, n)?;
    if !(big_delta >= 0.0) || !(sigma_gamma > 0.0) {
        return Err(Error::Domain("need Delta >= 0 and sigma_gamma > 0"));
    }
    let s = 1.0 + big_delta * big_delta;
    let w = marginal_weight(big_delta, sigma_gamma);
    Ok(-0.5 * (n as f64 - 1.0) * libm::log(s)
        - 0.5 * libm::log(s + sigma_gamma * sigma_gamma)
        - z_sq / (2.0 * s)
        + log_1f1(0.5, k as f64 / 2.0, w * f_sq)?)
}

/// Log Bayes factor of the `γ`-marginalized evidence against `K = N`.
pub fn log_bf_gamma_marginal(
    f_sq: f64,
    z_sq: f64,
    k: usize,
    n: usize,
    big_delta: f64,
    sigma_gamma: f64,
) -> Result<f64> {
    check_dims(k, n)?;
    if !(big_delta >= 0.0) || !(sigma_gamma > 0.0) {
        return Err(Error::Domain("need Delta >= 0 and sigma_gamma > 0"));
    }
    let w = marginal_weight(big_delta, sigma_gamma);
    Ok(log_1f1(0.5, k as f64 / 2.0, w * f_sq)? - log_1f1(0.5, n as f64 / 2.0, w * z_sq)?)
}

/// `σ_γ → ∞` limit of [`log_bf_gamma_marginal`].
pub fn log_bf_wide_gamma_prior(
    f_sq: f64,
    z_sq: f64,
    k: usize,
    n: usize,
    big_delta: f64,
) -> Result<f64> {
    check_dims(k, n)?;
    if !(big_delta >= 0.0) {
        return Err(Error::Domain("need Delta >= 0"));
    }
    let w = 1.0 / (2.0 * (1.0 + big_delta * big_delta));
    Ok(log_1f1(0.5, k as f64 / 2.0, w * f_sq)? - log_1f1(0.5, n as f64 / 2.0, w * z_sq)?)
}
