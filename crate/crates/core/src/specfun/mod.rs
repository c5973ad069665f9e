//! Special functions, radial priors and quadrature.

mod hypergeometric;
pub mod quadrature;
mod radial;

pub(crate) use hypergeometric::ln_gamma;
pub use hypergeometric::{
    log_0f1, log_1f1, log_1f1_asymptotic, log_1f1_series, log_humbert_psi2, MAX_DIAGONALS,
    MAX_TERMS, SERIES_TOL, SWITCH_0F1, SWITCH_1F1,
};
pub use radial::{
    conditioned_log_evidence, gamma_radial_pdf, hypersphere_log_prior, noncentral_gamma_radial_pdf,
    RadialPriorParams,
};

use crate::Result;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> f64 {
    ln_gamma(x)
}

/// Both sides of
/// `∫₀^∞ e^{−r} r^{a−1}/Γ(a) · ₀F₁(a; xr) · ₀F₁(a; yr) dr = e^{x+y} ₀F₁(a; xy)`,
/// the left by adaptive quadrature.
pub fn verify_integral_identity(a: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !(x >= 0.0) || !(y >= 0.0) {
        return Err(crate::Error::Domain(
            "identity requires a > 0 and x, y >= 0",
        ));
    }
    let ln_norm = ln_gamma(a);
    let mut failure = None;
    let lhs = quadrature::integrate_to_infinity(
        |r| {
            let terms = log_0f1(a, x * r).and_then(|fx| Ok(fx + log_0f1(a, y * r)?));
            match terms {
                Ok(t) => libm::exp(-r + (a - 1.0) * libm::log(r) - ln_norm + t),
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        1e-12,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let rhs = libm::exp(x + y + log_0f1(a, x * y)?);
    Ok((lhs.value, rhs))
}
