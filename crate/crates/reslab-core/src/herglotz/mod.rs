//! Catalog of scalar and matrix-valued Herglotz (Nevanlinna) functions.
//!
//! Each model stands for the Stieltjes transform F(z) = ∫ dμ(t)/(t−z) of a
//! finite positive measure μ, evaluated in closed form. Matrix models
//! combine scalar transforms as A(z) = J·Σ C_m·F_m(z) with a diagonal
//! signature J and positive-semidefinite coefficient matrices C_m. The
//! models carry all spectral input to the resonance computations; no
//! underlying operator is ever materialized.

mod matrix;
mod scalar;
mod selfcheck;

pub use matrix::MatrixHerglotzModel;
pub use scalar::ScalarHerglotzModel;
pub use selfcheck::{herglotz_selfcheck, SelfCheckItem, SelfCheckReport};

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::NumericsError;

/// Largest matrix model dimension.
pub const MAX_MODEL_DIM: usize = 8;

/// Errors raised while constructing or evaluating Herglotz models.
#[derive(Debug, Clone, Error)]
pub enum HerglotzError {
    #[error("scale parameter must be positive and finite, got {value}")]
    NonPositiveScale { value: f64 },
    #[error("total mass must be positive and finite, got {value}")]
    NonPositiveMass { value: f64 },
    #[error("interval endpoints must satisfy a < b, got [{a}, {b}]")]
    EmptyInterval { a: f64, b: f64 },
    #[error("point mass at {position} must have positive finite weight, got {weight}")]
    NonPositiveWeight { position: f64, weight: f64 },
    #[error("combination weight must be nonnegative and finite, got {weight}")]
    NegativeWeight { weight: f64 },
    #[error("model parameters must be finite")]
    NonFiniteParameter,
    #[error("self-check sample {z} must lie in the open upper half-plane")]
    SampleNotInUpperHalfPlane { z: Complex64 },
    #[error("lambda = {lambda} lies in the continuous support; use a boundary evaluation")]
    BoundaryEvaluationRequired { lambda: f64 },
    #[error("lambda = {lambda} is an excluded (measure-zero) point for this model")]
    MeasureZeroPoint { lambda: f64 },
    #[error("matrix model dimension must be between 1 and {max}, got {dim}")]
    BadDimension { dim: usize, max: usize },
    #[error("signature entries must be ±1")]
    BadSignature,
    #[error("coefficient matrix {index} must be Hermitian")]
    NotHermitian { index: usize },
    #[error("coefficient matrix {index} must be positive-semidefinite (smallest eigenvalue {smallest:.3e})")]
    NotPositiveSemidefinite { index: usize, smallest: f64 },
    #[error("coefficient matrix {index} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongCoefficientShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Absolute-plus-relative tolerance used to decide whether a real number
/// hits an excluded point (atom position or support endpoint).
pub(crate) fn excluded_point_tol(reference: f64) -> f64 {
    1e-12 * (1.0 + reference.abs())
}

pub(crate) fn is_finite_c(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
