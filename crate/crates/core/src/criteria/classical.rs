/// `χ² + 2K`.
pub fn aic(chi_sq: f64, k: usize) -> f64 {
    chi_sq + 2.0 * k as f64
}

/// `χ² + K ln N`.
pub fn bic(chi_sq: f64, k: usize, n: usize) -> f64 {
    chi_sq + k as f64 * libm::log(n as f64)
}

/// Small-sample corrected AIC, `AIC + 2K(K+1)/(N−K−1)`.
///
/// Infinite once `N − K − 1 ≤ 0`, which keeps those K from ever being
/// selected.
pub fn aicc(chi_sq: f64, k: usize, n: usize) -> f64 {
    if n <= k + 1 {
        return f64::INFINITY;
    }
    let kf = k as f64;
    aic(chi_sq, k) + 2.0 * kf * (kf + 1.0) / (n - k - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(aic(24.0, 8), 40.0);
        assert_eq!(aic(0.0, 1), 2.0);
        assert!((bic(24.0, 8, 32) - (24.0 + 8.0 * libm::log(32.0))).abs() < 1e-14);
        assert!((bic(24.0, 8, 32) - 51.725_887_222_397_81).abs() < 1e-12);
        assert!((bic(0.0, 32, 32) - 110.903_548_889_591_6).abs() < 1e-10);
        assert!((aicc(24.0, 8, 32) - (40.0 + 144.0 / 23.0)).abs() < 1e-13);
        assert!((aicc(0.0, 1, 32) - (2.0 + 4.0 / 30.0)).abs() < 1e-15);
    }

    #[test]
    fn aicc_undefined_near_saturation() {
        assert_eq!(aicc(1.0, 31, 32), f64::INFINITY);
        assert_eq!(aicc(0.0, 32, 32), f64::INFINITY);
        assert!(aicc(1.0, 30, 32).is_finite());
    }

    #[test]
    fn penalties_strictly_increase() {
        for k in 1..31 {
            assert!(aic(5.0, k + 1) > aic(5.0, k));
            assert!(bic(5.0, k + 1, 32) > bic(5.0, k, 32));
        }
    }
}
