//! Deterministic numerical kernels: complex polynomial roots, small dense
//! complex eigenvalue problems, adaptive Stieltjes quadrature, boundary-value
//! extrapolation, and phase unwrapping.
//!
//! Everything here is a pure function of its inputs; no global state, no
//! hidden randomness. Iteration schedules and panel orders are fixed so that
//! repeated runs produce bit-identical results.

mod eig;
mod extrap;
mod matrix;
mod poly;
mod quad;
mod unwrap;

pub use eig::{small_eigenvalues, Eigenvalues};
pub use extrap::{boundary_extrapolate, Extrapolated};
pub use matrix::CMatrix;
pub use poly::{poly_roots, ComplexPolynomial};
pub use quad::{adaptive_stieltjes, adaptive_stieltjes_with_budget};
pub use unwrap::{unwrap_phase, unwrap_phase_from, PhaseSamples};

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numeric kernels.
#[derive(Debug, Clone, Error)]
pub enum NumericsError {
    #[error("polynomial must have degree >= 1 after trimming trailing zeros")]
    DegreeTooLow,
    #[error("root iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    RootsDidNotConverge {
        iterations: usize,
        /// Best iterate found when the cap was hit.
        best: Vec<Complex64>,
        /// Largest |p(root)| over the best iterate.
        residual: f64,
    },
    #[error("matrix dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("phase samples at index {index} jump by {jump:.6} rad; refine the grid")]
    RefinementNeeded { index: usize, jump: f64 },
    #[error("anchor {anchor:.6} is inconsistent with the anchored sample (deviation {deviation:.3e})")]
    AnchorMismatch { anchor: f64, deviation: f64 },
    #[error("sample at index {index} has modulus {modulus:.6}, expected 1")]
    NotUnitModulus { index: usize, modulus: f64 },
    #[error("input must contain at least one sample")]
    EmptyInput,
    #[error("quadrature panel budget exhausted; achieved error estimate {achieved:.3e}")]
    QuadratureBudgetExhausted { achieved: f64, value: Complex64 },
    #[error("evaluation point lies on the integration interval")]
    EvaluationPointOnSupport,
    #[error("boundary values at lambda = {lambda} diverge; the point is outside the admissible set")]
    DivergentBoundaryLimit { lambda: f64 },
    #[error("input contains a non-finite value")]
    NonFiniteInput,
}
