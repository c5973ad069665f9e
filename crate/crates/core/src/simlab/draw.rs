//! Synthetic datasets on the cosine design.

use alloc::vec::Vec;

use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use super::SimConfig;
use crate::linmodel::{cosine_basis_value, BasisSpec};
use crate::Matrix;

/// Midpoint grid `x_n = (2n−1)π/2N`.
pub fn sample_points(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| (2 * i - 1) as f64 * core::f64::consts::PI / (2 * n) as f64)
        .collect()
}

/// The cosine family; orthonormal on [`sample_points`].
pub fn cosine_basis(_n: usize) -> BasisSpec {
    BasisSpec::Cosine
}

/// Full `N × N` cosine design with unit uncertainties.
pub fn cosine_design(n: usize) -> Matrix {
    let x = sample_points(n);
    Matrix::from_fn(n, n, |i, k| cosine_basis_value(k + 1, x[i], n))
}

/// Which family of Gaussian draws a stream feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Amplitude spreads `φ_k`.
    Phi = 0,
    /// Additive noise `ε_n(S)`.
    Epsilon = 1,
}

/// Independent generator for one replicate and role.
///
/// Streams are addressed by `(seed, replicate, role)` through the ChaCha
/// stream counter, so any replicate can be regenerated in isolation.
pub fn stream_rng(seed: u64, replicate: u64, role: Role) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(2 * replicate + role as u64);
    rng
}

/// One replicate: a dataset per `S = 1, …, N` sharing `φ` and `ε`.
///
/// Column `S` of `d` is `Σ_{k≤S} X[·][k]·(a + bφ_k) + ε(S)`; `modes` holds
/// `B = XᵀD`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimDraw {
    pub phi: Vec<f64>,
    pub eps: Matrix,
    pub d: Matrix,
    pub modes: Matrix,
}

impl SimDraw {
    /// Builds the draw from explicit `φ` and `ε`.
    pub fn from_parts(design: &Matrix, a: f64, b: f64, phi: Vec<f64>, eps: Matrix) -> Self {
        let n = design.rows();
        let amp: Vec<f64> = phi.iter().map(|p| a + b * p).collect();
        // Running partial sums over k build every column in one pass.
        let mut signal = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut acc = 0.0;
            for (x, w) in design.row(i).iter().zip(&amp) {
                acc += x * w;
                signal.push(acc);
            }
        }
        let d = Matrix::from_fn(n, n, |i, s| signal[i * n + s] + eps[(i, s)]);
        let modes = design.t_matmul(&d);
        Self { phi, eps, d, modes }
    }

    /// `F²_{K|S}` and `χ²_{K|S}` for `K = 1, …, N` at column `S` (1-based).
    pub fn mode_sums(&self, s: usize) -> ModeSums {
        ModeSums::from_modes(&self.modes.column(s - 1))
    }
}

/// Draws replicate `replicate` of `config`.
pub fn generate_draw(config: &SimConfig, design: &Matrix, replicate: u64) -> SimDraw {
    let n = config.n;
    let mut phi_rng = stream_rng(config.seed, replicate, Role::Phi);
    let phi: Vec<f64> = (0..n)
        .map(|_| StandardNormal.sample(&mut phi_rng))
        .collect();
    let mut eps_rng = stream_rng(config.seed, replicate, Role::Epsilon);
    let eps = Matrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut eps_rng));
    SimDraw::from_parts(design, config.a, config.b, phi, eps)
}

/// Nested signal and residual sums for one column of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSums {
    pub f_sq: Vec<f64>,
    pub chi_sq: Vec<f64>,
    pub z_sq: f64,
}

impl ModeSums {
    /// Prefix sums for `F²`, suffix sums for `χ²`, so the saturated model
    /// has `χ² = 0` exactly.
    pub fn from_modes(modes: &[f64]) -> Self {
        let n = modes.len();
        let mut f_sq = Vec::with_capacity(n);
        let mut acc = 0.0;
        for m in modes {
            acc += m * m;
            f_sq.push(acc);
        }
        let mut chi_sq = alloc::vec![0.0; n];
        let mut tail = 0.0;
        for k in (0..n).rev() {
            chi_sq[k] = tail;
            tail += modes[k] * modes[k];
        }
        Self {
            f_sq,
            chi_sq,
            z_sq: acc,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::norm_sq;
    use core::f64::consts::PI;

    #[test]
    fn grid_points() {
        assert_eq!(sample_points(1), [PI / 2.0]);
        let two = sample_points(2);
        assert!((two[0] - PI / 4.0).abs() < 1e-15 && (two[1] - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((sample_points(32)[0] - PI / 64.0).abs() < 1e-16);
    }

    #[test]
    fn design_is_orthonormal() {
        for n in [1, 2, 4, 7, 32] {
            let x = cosine_design(n);
            let h = x.t_matmul(&x);
            assert!(h.sub(&Matrix::identity(n)).max_abs() < 1e-12, "n = {n}");
        }
        assert_eq!(cosine_basis(4), BasisSpec::Cosine);
    }

    #[test]
    fn noiseless_signal_energy() {
        let n = 32;
        let x = cosine_design(n);
        let draw = SimDraw::from_parts(&x, 3.0, 0.0, alloc::vec![0.0; n], Matrix::zeros(n, n));
        for s in 1..=n {
            let col = draw.d.column(s - 1);
            assert!((norm_sq(&col) - 9.0 * s as f64).abs() < 1e-10);
            let sums = draw.mode_sums(s);
            assert!((sums.chi_sq[s - 1]).abs() < 1e-10);
        }
    }

    #[test]
    fn pure_noise_without_signal() {
        let n = 8;
        let x = cosine_design(n);
        let cfg = SimConfig::new(n, 0.0, 0.0, 1, 7).unwrap();
        let draw = generate_draw(&cfg, &x, 3);
        assert_eq!(draw.d, draw.eps);
    }

    #[test]
    fn modes_match_direct_projection() {
        let n = 16;
        let x = cosine_design(n);
        let cfg = SimConfig::new(n, 1.5, 0.7, 1, 11).unwrap();
        let draw = generate_draw(&cfg, &x, 0);
        let direct = x.t_matmul(&draw.eps);
        for k in 0..n {
            for s in 0..n {
                let signal = if k <= s { 1.5 + 0.7 * draw.phi[k] } else { 0.0 };
                assert!((draw.modes[(k, s)] - signal - direct[(k, s)]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sums_are_nested() {
        let n = 12;
        let x = cosine_design(n);
        let cfg = SimConfig::new(n, 1.0, 1.0, 1, 5).unwrap();
        let draw = generate_draw(&cfg, &x, 9);
        for s in 1..=n {
            let m = draw.mode_sums(s);
            assert_eq!(m.chi_sq[n - 1], 0.0);
            assert_eq!(m.f_sq[n - 1], m.z_sq);
            assert!((m.z_sq - norm_sq(&draw.d.column(s - 1))).abs() < 1e-10 * m.z_sq);
            for k in 1..n {
                assert!(m.f_sq[k] >= m.f_sq[k - 1]);
                assert!(m.chi_sq[k] <= m.chi_sq[k - 1]);
                assert!((m.f_sq[k] + m.chi_sq[k] - m.z_sq).abs() < 1e-12 * m.z_sq);
            }
        }
    }

    #[test]
    fn streams_are_addressable() {
        let n = 6;
        let x = cosine_design(n);
        let cfg = SimConfig::new(n, 1.0, 1.0, 1, 0xD1CE).unwrap();
        let a = generate_draw(&cfg, &x, 41);
        let _ = generate_draw(&cfg, &x, 40);
        let b = generate_draw(&cfg, &x, 41);
        assert_eq!(a, b);
        assert_ne!(a.phi, generate_draw(&cfg, &x, 42).phi);
        let other = SimConfig {
            seed: 1,
            ..cfg.clone()
        };
        assert_ne!(a.phi, generate_draw(&other, &x, 41).phi);
    }
}
