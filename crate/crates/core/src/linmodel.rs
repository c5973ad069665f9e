//! Linear-regression geometry.
//!
//! The standardized data vector `z` is split into its projection `f̂` on the
//! span of the design columns (model space) and the orthogonal residual `χ̂`
//! (noise space), so that `z² = F² + χ²`. The model-space mode is expressed
//! in hyperspherical coordinates `β̂ = L^{1/2} Sᵀ α̂`, where `H = S L Sᵀ`, so
//! that `F² = β̂ᵀβ̂`. The likelihood constant `C = (2π)^{-N/2} Πσ⁻¹` is never
//! formed; every evidence downstream is a log-value relative to it.

use alloc::vec::Vec;

use crate::eigen::jacobi_eigen;
use crate::matrix::{dot, norm_sq, Matrix};
use crate::{Error, Result};

/// Smallest admissible eigenvalue of `H`, relative to the largest.
pub const RANK_TOL: f64 = 1e-12;

/// Residual norm below which a Gram-Schmidt seed direction is discarded.
pub const GRAM_SCHMIDT_DROP_TOL: f64 = 1e-10;

/// Observed points `(x_n, y_n, σ_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Vec<f64>,
    y: Vec<f64>,
    sigma: Vec<f64>,
}

impl Dataset {
    pub fn new(x: Vec<f64>, y: Vec<f64>, sigma: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() != sigma.len() {
            return Err(Error::LengthMismatch {
                x: x.len(),
                y: y.len(),
                sigma: sigma.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if let Some((index, &value)) = sigma.iter().enumerate().find(|(_, s)| !(**s > 0.0)) {
            return Err(Error::InvalidUncertainty { index, value });
        }
        Ok(Self { x, y, sigma })
    }

    /// Unit uncertainties.
    pub fn with_unit_sigma(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let sigma = alloc::vec![1.0; y.len()];
        Self::new(x, y, sigma)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }
}

/// `z_n = y_n / σ_n` and its squared norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedData {
    pub z: Vec<f64>,
    pub z_sq: f64,
}

impl StandardizedData {
    pub fn from_z(z: Vec<f64>) -> Self {
        let z_sq = norm_sq(&z);
        Self { z, z_sq }
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

pub fn standardize(data: &Dataset) -> StandardizedData {
    StandardizedData::from_z(data.y.iter().zip(&data.sigma).map(|(y, s)| y / s).collect())
}

/// Basis functions `f_k(x)`.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisSpec {
    /// `f_1 = √(1/N)`, `f_k(x) = √(2/N)·cos((k−1)x)`; orthonormal on the
    /// midpoint grid `x_n = (2n−1)π/2N`.
    Cosine,
    /// Precomputed values: row `n`, column `k` holds `f_{k+1}(x_n)`.
    Table(Matrix),
}

impl BasisSpec {
    /// Number of basis functions available for a dataset of `n` points.
    pub fn available(&self, n: usize) -> usize {
        match self {
            BasisSpec::Cosine => n,
            BasisSpec::Table(m) => m.cols(),
        }
    }
}

/// Cosine basis value `f_k(x)` for a series of length `n` (`k` is 1-based).
pub fn cosine_basis_value(k: usize, x: f64, n: usize) -> f64 {
    let n = n as f64;
    if k == 1 {
        libm::sqrt(1.0 / n)
    } else {
        libm::sqrt(2.0 / n) * libm::cos((k - 1) as f64 * x)
    }
}

/// `N × K` design matrix with entries `f_k(x_n)/σ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    matrix: Matrix,
}

impl DesignMatrix {
    pub fn from_matrix(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    /// Basis vector `v_k` (0-based column index).
    pub fn basis_column(&self, k: usize) -> Vec<f64> {
        self.matrix.column(k)
    }

    pub fn hessian(&self) -> Matrix {
        self.matrix.t_matmul(&self.matrix)
    }
}

pub fn build_design_matrix(data: &Dataset, basis: &BasisSpec, k: usize) -> Result<DesignMatrix> {
    let n = data.len();
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if k > n {
        return Err(Error::Overparameterized { k, n });
    }
    let available = basis.available(n);
    if k > available {
        return Err(Error::BasisExhausted { k, available });
    }
    let matrix = match basis {
        BasisSpec::Cosine => Matrix::from_fn(n, k, |r, c| {
            cosine_basis_value(c + 1, data.x[r], n) / data.sigma[r]
        }),
        BasisSpec::Table(table) => {
            if table.rows() != n {
                return Err(Error::BasisShape {
                    rows: table.rows(),
                    n,
                });
            }
            for r in 0..n {
                for c in 0..k {
                    if !table[(r, c)].is_finite() {
                        return Err(Error::NonFiniteBasis { row: r, col: c });
                    }
                }
            }
            Matrix::from_fn(n, k, |r, c| table[(r, c)] / data.sigma[r])
        }
    };
    Ok(DesignMatrix { matrix })
}

/// Least-squares fit of one model dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FitDecomposition {
    pub k: usize,
    pub alpha_hat: Vec<f64>,
    pub hessian: Matrix,
    /// Orthonormal eigenvectors of `H` as columns.
    pub eigvecs: Matrix,
    /// Eigenvalues of `H`, descending.
    pub eigvals: Vec<f64>,
    pub beta_hat: Vec<f64>,
    pub f_sq: f64,
    pub chi_sq: f64,
    pub z_sq: f64,
    pub f_hat: Vec<f64>,
    pub resid_hat: Vec<f64>,
}

pub fn fit(z: &StandardizedData, design: &DesignMatrix) -> Result<FitDecomposition> {
    let x = design.matrix();
    let (n, k) = (x.rows(), x.cols());
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if z.len() != n {
        return Err(Error::LengthMismatch {
            x: n,
            y: z.len(),
            sigma: n,
        });
    }
    let hessian = design.hessian();
    let eig = jacobi_eigen(&hessian)?;
    let largest = eig.values[0];
    let smallest = eig.values[k - 1];
    if !(largest > 0.0) || smallest <= RANK_TOL * largest {
        let ratio = if largest > 0.0 {
            smallest / largest
        } else {
            0.0
        };
        return Err(Error::SingularDesign { k, ratio });
    }

    // β̂ = L^{-1/2} Sᵀ Xᵀz and α̂ = S L^{-1/2} β̂.
    let xtz = x.t_mul_vec(&z.z);
    let projected = eig.vectors.t_mul_vec(&xtz);
    let beta_hat: Vec<f64> = projected
        .iter()
        .zip(&eig.values)
        .map(|(p, l)| p / libm::sqrt(*l))
        .collect();
    let scaled: Vec<f64> = beta_hat
        .iter()
        .zip(&eig.values)
        .map(|(b, l)| b / libm::sqrt(*l))
        .collect();
    let alpha_hat = eig.vectors.mul_vec(&scaled);

    let f_hat = x.mul_vec(&alpha_hat);
    let resid_hat: Vec<f64> = z.z.iter().zip(&f_hat).map(|(a, b)| a - b).collect();
    let (f_sq, chi_sq) = if k == n {
        (z.z_sq, 0.0)
    } else {
        let f_sq = norm_sq(&beta_hat);
        (f_sq, (z.z_sq - f_sq).max(0.0))
    };

    Ok(FitDecomposition {
        k,
        alpha_hat,
        hessian,
        eigvecs: eig.vectors,
        eigvals: eig.values,
        beta_hat,
        f_sq,
        chi_sq,
        z_sq: z.z_sq,
        f_hat,
        resid_hat,
    })
}

/// Modes for an orthonormal design, `β̂ = Xᵀz`; `H = I` makes the
/// eigen-rotation trivial.
pub fn orthonormal_modes(z: &StandardizedData, design: &DesignMatrix) -> Vec<f64> {
    design.matrix().t_mul_vec(&z.z)
}

/// Orthonormal basis of the noise space and the residual's coordinates in it.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseBasis {
    /// `N × L` matrix whose columns are orthonormal and orthogonal to `X_K`.
    pub x_l: Matrix,
    pub beta_hat_l: Vec<f64>,
}

impl NoiseBasis {
    pub fn l(&self) -> usize {
        self.x_l.cols()
    }

    /// `Σ β̂_ℓ²`, which equals χ² of the model fit.
    pub fn chi_sq(&self) -> f64 {
        norm_sq(&self.beta_hat_l)
    }
}

fn orthogonalize_against(v: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(q, v);
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= c * qi;
        }
    }
}

/// Completes `X_K` to the full data space.
///
/// Model columns are first orthonormalized, then the standard coordinate
/// directions are swept through modified Gram-Schmidt, orthogonalizing each
/// seed twice and dropping those whose residual falls below
/// [`GRAM_SCHMIDT_DROP_TOL`].
pub fn noise_basis(design: &DesignMatrix, z: &StandardizedData) -> Result<NoiseBasis> {
    let x = design.matrix();
    let (n, k) = (x.rows(), x.cols());
    if k > n {
        return Err(Error::Overparameterized { k, n });
    }
    let needed = n - k;

    let mut model: Vec<Vec<f64>> = Vec::with_capacity(k);
    for c in 0..k {
        let mut v = x.column(c);
        let scale = libm::sqrt(norm_sq(&v));
        orthogonalize_against(&mut v, &model);
        orthogonalize_against(&mut v, &model);
        let norm = libm::sqrt(norm_sq(&v));
        if !(norm > GRAM_SCHMIDT_DROP_TOL * scale) {
            return Err(Error::SingularDesign { k, ratio: 0.0 });
        }
        v.iter_mut().for_each(|e| *e /= norm);
        model.push(v);
    }

    let mut noise: Vec<Vec<f64>> = Vec::with_capacity(needed);
    for seed in 0..n {
        if noise.len() == needed {
            break;
        }
        let mut v = alloc::vec![0.0; n];
        v[seed] = 1.0;
        for _ in 0..2 {
            orthogonalize_against(&mut v, &model);
            orthogonalize_against(&mut v, &noise);
        }
        let norm = libm::sqrt(norm_sq(&v));
        if norm < GRAM_SCHMIDT_DROP_TOL {
            continue;
        }
        v.iter_mut().for_each(|e| *e /= norm);
        noise.push(v);
    }
    if noise.len() < needed {
        return Err(Error::DegenerateSpace {
            found: noise.len(),
            needed,
        });
    }

    let x_l = Matrix::from_fn(n, needed, |r, c| noise[c][r]);
    let beta_hat_l = x_l.t_mul_vec(&z.z);
    Ok(NoiseBasis { x_l, beta_hat_l })
}

/// Fits every `K = 1..=max_k`.
pub fn fit_profile_up_to(
    data: &Dataset,
    basis: &BasisSpec,
    max_k: usize,
) -> Result<Vec<FitDecomposition>> {
    let z = standardize(data);
    (1..=max_k)
        .map(|k| build_design_matrix(data, basis, k).and_then(|x| fit(&z, &x)))
        .collect()
}

/// Fits every `K = 1..=N`; the final entry is the saturated reference model.
pub fn fit_profile(data: &Dataset, basis: &BasisSpec) -> Result<Vec<FitDecomposition>> {
    fit_profile_up_to(data, basis, data.len())
}
