//! Quick numerical identity checks, run by `evidencia selfcheck`.

use alloc::vec::Vec;

use crate::criteria::{aic, log_bf_akaike_prior, log_bf_gamma_marginal, log_bf_robust_exact};
use crate::linmodel::{build_design_matrix, fit, noise_basis, standardize, BasisSpec, Dataset};
use crate::specfun::quadrature::integrate_to_infinity;
use crate::specfun::{
    gamma_radial_pdf, log_0f1, log_1f1, log_humbert_psi2, noncentral_gamma_radial_pdf,
    verify_integral_identity,
};
use crate::{Matrix, Result};

/// Result of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    run: fn() -> Result<f64>,
}

const CHECKS: [Check; 8] = [
    Check {
        name: "kummer_equal_parameters",
        tolerance: 1e-12,
        run: kummer_equal_parameters,
    },
    Check {
        name: "psi2_equal_parameters",
        tolerance: 1e-10,
        run: psi2_equal_parameters,
    },
    Check {
        name: "bessel_product_integral",
        tolerance: 1e-6,
        run: bessel_product_integral,
    },
    Check {
        name: "radial_pdf_normalization",
        tolerance: 1e-8,
        run: radial_pdf_normalization,
    },
    Check {
        name: "pythagoras",
        tolerance: 1e-8,
        run: pythagoras,
    },
    Check {
        name: "noise_space_residual",
        tolerance: 1e-8,
        run: noise_space_residual,
    },
    Check {
        name: "akaike_prior_limit",
        tolerance: 1e-3,
        run: akaike_prior_limit,
    },
    Check {
        name: "wide_gamma_prior_limit",
        tolerance: 1e-4,
        run: wide_gamma_prior_limit,
    },
];

/// Runs every check with tolerances multiplied by `tolerance_scale`.
///
/// A check that cannot be evaluated reports an infinite error.
pub fn run_selfcheck(tolerance_scale: f64) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|c| {
            let error = (c.run)().unwrap_or(f64::INFINITY);
            let tolerance = c.tolerance * tolerance_scale;
            CheckOutcome {
                name: c.name,
                error,
                tolerance,
                passed: error <= tolerance,
            }
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn kummer_equal_parameters() -> Result<f64> {
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 4.0, 16.0] {
        for x in [0.5, 10.0, 100.0, 300.0] {
            worst = worst.max(rel(log_1f1(a, a, x)?, x));
        }
    }
    Ok(worst)
}

fn psi2_equal_parameters() -> Result<f64> {
    let mut worst = 0.0f64;
    for a in [0.5, 2.0, 5.5] {
        for (x, y) in [(0.5, 1.0), (3.0, 3.0), (10.0, 0.5), (7.5, 9.0)] {
            let reduced = x + y + log_0f1(a, x * y)?;
            worst = worst.max(rel(log_humbert_psi2(a, a, a, x, y)?, reduced));
        }
    }
    Ok(worst)
}

fn bessel_product_integral() -> Result<f64> {
    let (lhs, rhs) = verify_integral_identity(3.0, 2.0, 1.5)?;
    Ok(rel(lhs, rhs))
}

fn radial_pdf_normalization() -> Result<f64> {
    let central =
        integrate_to_infinity(|q| gamma_radial_pdf(q, 0.7, 5).unwrap_or(f64::NAN), 1e-12)?;
    let shifted = integrate_to_infinity(
        |r| noncentral_gamma_radial_pdf(r, 1.0, 3.0, 4).unwrap_or(f64::NAN),
        1e-12,
    )?;
    Ok((central.value - 1.0).abs().max((shifted.value - 1.0).abs()))
}

/// A fixed irregular dataset with a polynomial table basis.
fn sample_fit() -> Result<(
    crate::linmodel::FitDecomposition,
    crate::linmodel::NoiseBasis,
)> {
    let n = 9;
    let x: Vec<f64> = (0..n).map(|i| -1.0 + 0.25 * i as f64).collect();
    let y: Vec<f64> = x
        .iter()
        .map(|t| 0.3 + 1.7 * t - 0.4 * t * t + libm::sin(5.0 * t))
        .collect();
    let sigma: Vec<f64> = (0..n).map(|i| 0.5 + 0.1 * i as f64).collect();
    let table = Matrix::from_fn(n, 4, |i, k| libm::pow(x[i], k as f64));
    let data = Dataset::new(x, y, sigma)?;
    let z = standardize(&data);
    let design = build_design_matrix(&data, &BasisSpec::Table(table), 4)?;
    Ok((fit(&z, &design)?, noise_basis(&design, &z)?))
}

fn pythagoras() -> Result<f64> {
    let (f, _) = sample_fit()?;
    Ok(rel(f.f_sq + f.chi_sq, f.z_sq))
}

fn noise_space_residual() -> Result<f64> {
    let (f, noise) = sample_fit()?;
    Ok(rel(noise.chi_sq(), f.chi_sq))
}

fn akaike_prior_limit() -> Result<f64> {
    let eps = 1e-4;
    let (d, big) = (1.0 - eps, 1.0 + eps);
    let c = 1.0 / (1.0 + d * d) - 1.0 / (1.0 + big * big);
    let n = 32;
    let mut worst = 0.0f64;
    for (k, chi) in [(1, 60.0), (8, 24.0), (20, 9.0)] {
        let scaled = -2.0 * log_bf_akaike_prior(chi, k, n, d, big)? / c + 2.0 * n as f64;
        worst = worst.max((scaled - aic(chi, k)).abs());
    }
    Ok(worst)
}

fn wide_gamma_prior_limit() -> Result<f64> {
    let (f, z, k, n) = (40.0, 104.0, 8, 32);
    let limit = log_bf_robust_exact(f, z, k, n)?;
    let wide = log_bf_gamma_marginal(f, z, k, n, 1e-6, 1e6)?;
    Ok(rel(wide, limit))
}
