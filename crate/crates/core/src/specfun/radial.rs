//! Radial prior densities and the radius-conditioned evidence.
//!
//! A model-space parameter vector `β_K` is described by its radius
//! `r = ‖β_K‖`, a noise-space vector `β_L` by `q = ‖β_L‖`. Uniform measure on
//! each hypersphere plus a radial density gives the full prior.

use super::hypergeometric::{ln_gamma, log_0f1};
use crate::{Error, Result};

const LN_2: f64 = core::f64::consts::LN_2;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Hyperparameters of the radial priors.
///
/// `delta` scales the noise prior, `big_delta` the model prior, `gamma` is
/// the norm of the model prior mode and `sigma_gamma` the width of the
/// half-Gaussian placed on `gamma` when it is marginalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPriorParams {
    pub delta: f64,
    pub big_delta: f64,
    pub gamma: f64,
    pub sigma_gamma: f64,
}

impl RadialPriorParams {
    pub fn new(delta: f64, big_delta: f64, gamma: f64, sigma_gamma: f64) -> Result<Self> {
        if !(delta > 0.0) || !(sigma_gamma > 0.0) {
            return Err(Error::Domain("delta and sigma_gamma must be > 0"));
        }
        if !(big_delta >= 0.0) || !(gamma >= 0.0) {
            return Err(Error::Domain("Delta and gamma must be >= 0"));
        }
        Ok(Self {
            delta,
            big_delta,
            gamma,
            sigma_gamma,
        })
    }
}

/// Log-density of the radius of a zero-mean `dim`-variate Gaussian with
/// per-component variance `scale²`.
fn ln_central_radial(radius: f64, scale: f64, dim: usize) -> f64 {
    let half = dim as f64 / 2.0;
    let s2 = scale * scale;
    if radius == 0.0 {
        return if dim == 1 {
            0.5 * LN_2 - libm::log(scale) - 0.5 * LN_PI
        } else {
            f64::NEG_INFINITY
        };
    }
    let u = radius * radius / (2.0 * s2);
    libm::log(radius / s2) + (half - 1.0) * libm::log(u) - u - ln_gamma(half)
}

/// Gamma-type density of the noise radius:
/// `(q/δ²)·(q²/2δ²)^{L/2−1}·e^{−q²/2δ²}/Γ(L/2)`.
pub fn gamma_radial_pdf(q: f64, delta: f64, l: usize) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::Domain("gamma radial pdf requires delta > 0"));
    }
    if l == 0 {
        return Err(Error::Domain("gamma radial pdf requires L >= 1"));
    }
    if !(q >= 0.0) {
        return Err(Error::Domain("radius must be >= 0"));
    }
    Ok(libm::exp(ln_central_radial(q, delta, l)))
}

/// Noncentral Gamma density of the model radius: the law of `‖β‖` for
/// `β ~ N(μ, Δ² I_K)` with `‖μ‖ = γ`.
pub fn noncentral_gamma_radial_pdf(r: f64, big_delta: f64, gamma: f64, k: usize) -> Result<f64> {
    if !(big_delta > 0.0) {
        return Err(Error::Domain("noncentral gamma pdf requires Delta > 0"));
    }
    if k == 0 {
        return Err(Error::Domain("noncentral gamma pdf requires K >= 1"));
    }
    if !(r >= 0.0) || !(gamma >= 0.0) {
        return Err(Error::Domain("radius and gamma must be >= 0"));
    }
    let d2 = big_delta * big_delta;
    let shift = -gamma * gamma / (2.0 * d2);
    if gamma == 0.0 || r == 0.0 {
        return Ok(libm::exp(ln_central_radial(r, big_delta, k) + shift));
    }
    let bessel = log_0f1(k as f64 / 2.0, gamma * gamma * r * r / (4.0 * d2 * d2))?;
    Ok(libm::exp(
        ln_central_radial(r, big_delta, k) + shift + bessel,
    ))
}

/// `log[Γ(d/2) / (2 π^{d/2} ρ^{d−1})]`, the density prefactor of the uniform
/// measure on the `d`-sphere of radius `ρ`.
pub fn hypersphere_log_prior(dim: usize, radius: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::Domain("hypersphere dimension must be >= 1"));
    }
    if !(radius > 0.0) {
        return Err(Error::Domain("hypersphere radius must be > 0"));
    }
    let d = dim as f64;
    Ok(ln_gamma(d / 2.0) - LN_2 - 0.5 * d * LN_PI - (d - 1.0) * libm::log(radius))
}

/// Log-evidence at fixed model radius `r` and noise radius `q`, relative to
/// the likelihood constant:
///
/// `−½(F² + r²) + log ₀F₁(K/2; r²F²/4) − ½(χ² + q²) + log ₀F₁(L/2; q²χ²/4)`.
pub fn conditioned_log_evidence(
    f_sq: f64,
    chi_sq: f64,
    r: f64,
    q: f64,
    k: usize,
    l: usize,
) -> Result<f64> {
    if k == 0 || l == 0 {
        return Err(Error::Domain("conditioned evidence needs K, L >= 1"));
    }
    if !(f_sq >= 0.0 && chi_sq >= 0.0 && r >= 0.0 && q >= 0.0) {
        return Err(Error::Domain("conditioned evidence arguments must be >= 0"));
    }
    let model = -0.5 * (f_sq + r * r) + log_0f1(k as f64 / 2.0, r * r * f_sq / 4.0)?;
    let noise = -0.5 * (chi_sq + q * q) + log_0f1(l as f64 / 2.0, q * q * chi_sq / 4.0)?;
    Ok(model + noise)
}
