//! Bayesian model selection for linear regression with radial priors.
//!
//! The crate splits standardized data into a model-space signal `F²` and a
//! noise-space residual `χ²`, evaluates Bayes factors against the
//! saturated `K = N` reference model, and derives from them the classical
//! AIC/AICc/BIC together with the robust BIC built from noncentral Gamma
//! priors on the model radius. A Monte Carlo harness reproduces success-rate
//! experiments on a cosine design.
//!
//! Everything here is `no_std` with `alloc`: no IO, no threads, no clocks.
//! File formats, the CLI and parallel fan-out live in the `evidencia` crate.
//!
//! Module map:
//!
//! - [`linmodel`]: design matrices, least-squares modes, noise-space basis.
//! - [`specfun`]: log-domain ₀F₁, ₁F₁, Humbert Ψ₂, radial densities, quadrature.
//! - [`criteria`]: information criteria, Bayes factors, per-K profiles.
//! - [`simlab`]: data generator, success-rate experiment, analytic estimates.
//! - [`selfcheck`]: identity suite shared by the CLI and the tests.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod criteria;
pub mod eigen;
mod error;
pub mod linmodel;
pub mod matrix;
pub mod selfcheck;
pub mod simlab;
pub mod specfun;

pub use error::{Error, Result};
pub use matrix::Matrix;
