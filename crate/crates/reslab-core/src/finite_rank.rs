//! Finite-rank coupling families V = F*JF: resonance sets from the
//! eigenvalues of A(λ+i0), the determinant phase sum rule, resonance
//! indices of real resonance points, and the decomposition of the spectral
//! shift into absolutely continuous and singular parts.

use num_complex::Complex64;
use thiserror::Error;

use crate::herglotz::{HerglotzError, MatrixHerglotzModel};
use crate::numerics::{small_eigenvalues, unwrap_phase_from, CMatrix, NumericsError};
use crate::rank_one::ResonancePoint;

/// Eigenvalues below this relative size count as resonances at infinity.
const ZERO_EIG_RTOL: f64 = 1e-10;
/// Relative tolerance for matching a queried real coupling against the
/// real resonance points of the set; mirrors the eigenvalue clustering.
const MATCH_RTOL: f64 = 1e-7;
/// Adjacent determinant phase steps are refined below this before
/// unwrapping.
const REFINE_TARGET: f64 = std::f64::consts::FRAC_PI_4;
const MAX_REFINE_ROUNDS: usize = 48;
const MAX_GRID_POINTS: usize = 400_000;
/// Vertical offsets used when counting resonance indices, coarse to fine.
const INDEX_LEVELS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Errors raised by the finite-rank engine.
#[derive(Debug, Clone, Error)]
pub enum FiniteRankError {
    #[error("real resonance point at coupling {resonance} inside the requested range; split there")]
    SplitRequired { resonance: f64 },
    #[error("det(1 + sA) vanished at coupling {coupling}; a real resonance was missed")]
    DeterminantVanished { coupling: f64 },
    #[error("coupling grid exceeded {points} points without meeting the phase step target")]
    ExcessiveRefinement { points: usize },
    #[error("{r} is not a real resonance point of the family at this energy")]
    NotAResonance { r: f64 },
    #[error("resonance index did not stabilize: {coarse} at y=1e-3 vs {fine} at y=1e-4")]
    UnstableCount { coarse: i64, fine: i64 },
    #[error("real resonance point at {resonance} sits on an endpoint of the coupling interval")]
    EndpointResonance { resonance: f64 },
    #[error(transparent)]
    Model(#[from] HerglotzError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Resonance points of the family at one energy, with the count of
/// eigenvalues that escaped to infinity (a_j = 0).
#[derive(Debug, Clone)]
pub struct ResonanceSet {
    points: Vec<ResonancePoint>,
    dropped_at_infinity: usize,
}

impl ResonanceSet {
    /// Distinct resonance points, each carrying its multiplicity.
    pub fn points(&self) -> &[ResonancePoint] {
        &self.points
    }

    pub fn dropped_at_infinity(&self) -> usize {
        self.dropped_at_infinity
    }

    /// Multiplicities summed over the finite points; together with
    /// [`Self::dropped_at_infinity`] this accounts for the full rank k.
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(ResonancePoint::multiplicity).sum()
    }

    /// The real resonance points of the set.
    pub fn real_points(&self) -> impl Iterator<Item = &ResonancePoint> {
        self.points.iter().filter(|p| p.is_real())
    }
}

/// ξ = ξ^(a) + ξ^(s) over a coupling interval at fixed energy.
#[derive(Debug, Clone)]
pub struct SsfDecomposition {
    pub xi_ac: f64,
    pub xi_singular: i64,
    pub xi_total: f64,
    /// Real resonance points strictly inside the interval and their
    /// resonance indices; the indices sum to `xi_singular`.
    pub contributing_real_points: Vec<(f64, i64)>,
}

fn set_from_matrix(a_matrix: &CMatrix) -> Result<ResonanceSet, FiniteRankError> {
    let eig = small_eigenvalues(a_matrix)?;
    let zero_tol = ZERO_EIG_RTOL * (1.0 + a_matrix.frobenius_norm());
    let mut points = Vec::new();
    let mut dropped = 0;
    for &(value, count) in &eig.clustered {
        if value.norm() <= zero_tol {
            dropped += count;
        } else {
            points.push(ResonancePoint::new(-1.0 / value, count));
        }
    }
    Ok(ResonanceSet {
        points,
        dropped_at_infinity: dropped,
    })
}

/// Resonance points r_j = −1/a_j from the eigenvalues of A(λ+i0).
pub fn resonance_set(
    model: &MatrixHerglotzModel,
    lambda: f64,
) -> Result<ResonanceSet, FiniteRankError> {
    set_from_matrix(&model.eval_boundary(lambda)?)
}

/// Resonance points of A(z) off the real axis.
pub fn resonance_set_at(
    model: &MatrixHerglotzModel,
    z: Complex64,
) -> Result<ResonanceSet, FiniteRankError> {
    set_from_matrix(&model.eval(z)?)
}

/// det(1 + s·A₊) normalized to the unit circle.
fn unit_det(a_plus: &CMatrix, s: f64) -> Result<Complex64, FiniteRankError> {
    let det = CMatrix::identity(a_plus.dim())
        .add(&a_plus.scaled(Complex64::new(s, 0.0)))
        .det();
    let modulus = det.norm();
    if !modulus.is_finite() || modulus < 1e-280 {
        return Err(FiniteRankError::DeterminantVanished { coupling: s });
    }
    Ok(det / modulus)
}

/// Grid over [a, b] refined until adjacent normalized-determinant
/// arguments differ by at most a quarter turn's half.
fn refined_det_samples(
    a_plus: &CMatrix,
    a: f64,
    b: f64,
) -> Result<Vec<Complex64>, FiniteRankError> {
    let mut grid: Vec<f64> = (0..=32)
        .map(|k| a + (b - a) * (f64::from(k) / 32.0))
        .collect();
    grid[32] = b;
    let mut values = grid
        .iter()
        .map(|&s| unit_det(a_plus, s))
        .collect::<Result<Vec<_>, _>>()?;

    for _ in 0..MAX_REFINE_ROUNDS {
        let mut next_grid = Vec::with_capacity(grid.len() * 2);
        let mut next_values = Vec::with_capacity(grid.len() * 2);
        let mut inserted = false;
        for i in 0..grid.len() - 1 {
            next_grid.push(grid[i]);
            next_values.push(values[i]);
            let step = (values[i + 1] / values[i]).arg().abs();
            if step > REFINE_TARGET {
                let mid = 0.5 * (grid[i] + grid[i + 1]);
                if mid > grid[i] && mid < grid[i + 1] {
                    next_grid.push(mid);
                    next_values.push(unit_det(a_plus, mid)?);
                    inserted = true;
                }
            }
        }
        next_grid.push(grid[grid.len() - 1]);
        next_values.push(values[values.len() - 1]);
        grid = next_grid;
        values = next_values;
        if !inserted {
            return Ok(values);
        }
        if grid.len() > MAX_GRID_POINTS {
            return Err(FiniteRankError::ExcessiveRefinement { points: grid.len() });
        }
    }
    Err(FiniteRankError::ExcessiveRefinement { points: grid.len() })
}

/// Σ_j θ_j(λ;b,a) = −2·Δ arg det(1 + s·A(λ+i0)) over s ∈ [a, b].
///
/// The determinant is computed directly by LU factorization; the resonance
/// set enters only as the precondition guard against real poles inside the
/// interval.
pub fn det_phase_sum(
    model: &MatrixHerglotzModel,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<f64, FiniteRankError> {
    assert!(a <= b, "det_phase_sum expects an ordered coupling range");
    if a == b {
        return Ok(0.0);
    }
    let set = resonance_set(model, lambda)?;
    for point in set.real_points() {
        let alpha = point.alpha();
        if alpha >= a && alpha <= b {
            return Err(FiniteRankError::SplitRequired { resonance: alpha });
        }
    }
    let a_plus = model.eval_boundary(lambda)?;
    let values = refined_det_samples(&a_plus, a, b)?;
    let samples = unwrap_phase_from(&values, 0, values[0].arg())?;
    Ok(-2.0 * samples.total_change())
}

/// Phase sum −2·Δ arg det(1 + s·A(z)) over s ∈ [a, b] at a complex energy.
///
/// Off the real axis no coupling is singular, so no resonance guard is
/// needed; the smoothed sum converges to the full spectral shift
/// (absolutely continuous plus singular) as Im z ↓ 0.
pub fn det_phase_sum_at(
    model: &MatrixHerglotzModel,
    z: Complex64,
    a: f64,
    b: f64,
) -> Result<f64, FiniteRankError> {
    assert!(a <= b, "det_phase_sum_at expects an ordered coupling range");
    if a == b {
        return Ok(0.0);
    }
    let a_matrix = model.eval(z)?;
    let values = refined_det_samples(&a_matrix, a, b)?;
    let samples = unwrap_phase_from(&values, 0, values[0].arg())?;
    Ok(-2.0 * samples.total_change())
}

/// Closed-form right side of the phase sum rule:
/// −Σ_j 2·sign(β_j)·[arctan((s−α_j)/|β_j|)]_a^b, multiplicities included.
///
/// Real points (β_j = 0) contribute nothing; they belong to the singular
/// part. Infinite endpoints are allowed.
pub fn lorentzian_sum_integral(set: &ResonanceSet, a: f64, b: f64) -> f64 {
    assert!(a <= b, "lorentzian_sum_integral expects an ordered range");
    let mut total = 0.0;
    for point in set.points() {
        if point.is_real() {
            continue;
        }
        let alpha = point.alpha();
        let beta = point.beta();
        let primitive = |s: f64| ((s - alpha) / beta.abs()).atan();
        let mult = point.multiplicity() as f64;
        total -= 2.0 * mult * beta.signum() * (primitive(b) - primitive(a));
    }
    total
}

/// Residual of the phase sum rule: the determinant phase sum against the
/// Lorentzian closed form, two independent numerical paths.
pub fn eq2_check(
    model: &MatrixHerglotzModel,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<f64, FiniteRankError> {
    let lhs = det_phase_sum(model, lambda, a, b)?;
    let rhs = lorentzian_sum_integral(&resonance_set(model, lambda)?, a, b);
    Ok((lhs - rhs).abs())
}

fn signed_count(set: &ResonanceSet, center: f64, radius: f64) -> (i64, i64) {
    let mut plus = 0i64;
    let mut minus = 0i64;
    for point in set.points() {
        if (point.value() - Complex64::new(center, 0.0)).norm() > radius {
            continue;
        }
        let mult = point.multiplicity() as i64;
        if point.beta() > 0.0 {
            plus += mult;
        } else if point.beta() < 0.0 {
            minus += mult;
        }
    }
    (plus, minus)
}

/// Resonance index N₊ − N₋ of the real resonance point r_real: the signed
/// count of resonance points of λ+iy converging to it, counted with
/// multiplicity inside discs of radius 10·√y·(1+|r_real|) for decreasing y.
pub fn resonance_index(
    model: &MatrixHerglotzModel,
    lambda: f64,
    r_real: f64,
) -> Result<i64, FiniteRankError> {
    let set = resonance_set(model, lambda)?;
    let match_tol = MATCH_RTOL * (1.0 + r_real.abs());
    if !set
        .real_points()
        .any(|p| (p.alpha() - r_real).abs() <= match_tol)
    {
        return Err(FiniteRankError::NotAResonance { r: r_real });
    }

    let mut indices = Vec::with_capacity(INDEX_LEVELS.len());
    for &y in &INDEX_LEVELS {
        let shifted = resonance_set_at(model, Complex64::new(lambda, y))?;
        let radius = 10.0 * y.sqrt() * (1.0 + r_real.abs());
        let (plus, minus) = signed_count(&shifted, r_real, radius);
        indices.push(plus - minus);
    }
    let coarse = indices[indices.len() - 2];
    let fine = indices[indices.len() - 1];
    if coarse != fine {
        return Err(FiniteRankError::UnstableCount { coarse, fine });
    }
    Ok(fine)
}

/// Full spectral shift over [a, b] at energy λ: the absolutely continuous
/// part from the Lorentzian integral and the singular part as the sum of
/// resonance indices of the real resonance points strictly inside.
pub fn ssf_total(
    model: &MatrixHerglotzModel,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<SsfDecomposition, FiniteRankError> {
    assert!(a <= b, "ssf_total expects an ordered coupling range");
    if a == b {
        return Ok(SsfDecomposition {
            xi_ac: 0.0,
            xi_singular: 0,
            xi_total: 0.0,
            contributing_real_points: Vec::new(),
        });
    }
    let set = resonance_set(model, lambda)?;
    for point in set.real_points() {
        let alpha = point.alpha();
        let tol = MATCH_RTOL * (1.0 + alpha.abs());
        if (alpha - a).abs() <= tol || (alpha - b).abs() <= tol {
            return Err(FiniteRankError::EndpointResonance { resonance: alpha });
        }
    }

    let xi_ac = -lorentzian_sum_integral(&set, a, b) / (2.0 * std::f64::consts::PI);
    let mut contributing = Vec::new();
    let mut xi_singular = 0i64;
    let inside: Vec<f64> = set
        .real_points()
        .filter(|p| p.alpha() > a && p.alpha() < b)
        .map(ResonancePoint::alpha)
        .collect();
    for alpha in inside {
        let index = resonance_index(model, lambda, alpha)?;
        xi_singular += index;
        contributing.push((alpha, index));
    }
    Ok(SsfDecomposition {
        xi_ac,
        xi_singular,
        xi_total: xi_ac + xi_singular as f64,
        contributing_real_points: contributing,
    })
}
