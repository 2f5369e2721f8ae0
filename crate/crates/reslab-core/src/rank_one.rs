//! Rank-one coupling families: resonance point of F at real energy,
//! scattering eigenvalue and its continuous phase in the coupling constant,
//! the Lorentzian derivative law, and its closed-form consequences.

use num_complex::Complex64;
use thiserror::Error;

use crate::herglotz::{HerglotzError, ScalarHerglotzModel};
use crate::numerics::{unwrap_phase_from, NumericsError};

/// Relative threshold deciding whether a resonance point is real.
pub const EPS_REAL: f64 = 1e-10;
/// Denominators |1 + r·F| below this count as sitting on a real resonance.
const DENOM_TOL: f64 = 1e-13;
/// Adjacent phase steps are refined below this before unwrapping; half of
/// the unwrapper's own π/2 ceiling.
const REFINE_TARGET: f64 = std::f64::consts::FRAC_PI_4;
/// Refinement safety caps.
const MAX_REFINE_ROUNDS: usize = 48;
const MAX_GRID_POINTS: usize = 400_000;
/// Test couplings for the internal eigenvalue-identity verification.
const IDENTITY_COUPLINGS: [f64; 3] = [0.0, 1.0, -2.0];

/// Errors raised by the rank-one engine.
#[derive(Debug, Clone, Error)]
pub enum RankOneError {
    #[error("F(lambda+i0) = 0 at lambda = {lambda}; the resonance escaped to infinity")]
    NoFiniteResonance { lambda: f64 },
    #[error("coupling {coupling} sits on a real resonance point")]
    AtRealResonance { coupling: f64 },
    #[error("real resonance point at coupling {resonance} inside the requested range; split there")]
    SplitRequired { resonance: f64 },
    #[error("phase derivative is singular at the real resonance coupling {coupling}")]
    DerivativeSingularity { coupling: f64 },
    #[error("check not applicable at lambda = {lambda}: the resonance point is real")]
    NotApplicable { lambda: f64 },
    #[error("coupling grid exceeded {points} points without meeting the phase step target")]
    ExcessiveRefinement { points: usize },
    #[error("eigenvalue identity violated by {deviation:.3e} (internal inconsistency)")]
    IdentityViolated { deviation: f64 },
    #[error(transparent)]
    Model(#[from] HerglotzError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Pole location r = α + iβ of the coupling family, with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePoint {
    value: Complex64,
    multiplicity: usize,
}

impl ResonancePoint {
    pub fn new(value: Complex64, multiplicity: usize) -> Self {
        assert!(multiplicity >= 1, "multiplicity must be at least 1");
        Self {
            value,
            multiplicity,
        }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Re r.
    pub fn alpha(&self) -> f64 {
        self.value.re
    }

    /// Im r.
    pub fn beta(&self) -> f64 {
        self.value.im
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Whether the point lies on the real axis up to the scale-aware
    /// threshold [`EPS_REAL`].
    pub fn is_real(&self) -> bool {
        self.beta().abs() <= EPS_REAL * (1.0 + self.alpha().abs())
    }
}

/// Continuous scattering phase θ₁(λ,·) over a coupling grid.
///
/// The branch is normalized to θ₁(λ, 0) = 0; when 0 lies outside the grid
/// the normalization is carried over by transporting the branch from 0
/// along a preliminary grid.
#[derive(Debug, Clone)]
pub struct PhaseTrace {
    lambda: f64,
    grid: Vec<f64>,
    theta: Vec<f64>,
}

impl PhaseTrace {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Strictly increasing coupling values.
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Continuous phase, one entry per grid point.
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// θ at the right end minus θ at the left end.
    pub fn total_change(&self) -> f64 {
        self.theta[self.theta.len() - 1] - self.theta[0]
    }
}

/// Outcome of the Breit-Wigner derivative check at the resonance center.
#[derive(Debug, Clone, Copy)]
pub struct BreitWignerCheck {
    /// Centered finite difference of the phase at r = α.
    pub finite_difference: f64,
    /// −2/β, the closed-form derivative at the center.
    pub target: f64,
    pub residual: f64,
}

/// Moduli of the continued scattering eigenvalue sampled around the
/// resonance point (expected huge), its conjugate (expected tiny), and on
/// the real axis (expected exactly 1).
#[derive(Debug, Clone)]
pub struct ContinuationReport {
    pub pole_moduli: Vec<f64>,
    pub zero_moduli: Vec<f64>,
    pub unitarity_deviation: f64,
    pub pole_bound: f64,
    pub zero_bound: f64,
}

impl ContinuationReport {
    pub fn passed(&self) -> bool {
        self.pole_moduli.iter().all(|&m| m > self.pole_bound)
            && self.zero_moduli.iter().all(|&m| m < self.zero_bound)
            && self.unitarity_deviation <= 1e-12
    }

    /// Smallest modulus sampled on the pole circle.
    pub fn pole_min(&self) -> f64 {
        self.pole_moduli.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest modulus sampled on the zero circle.
    pub fn zero_max(&self) -> f64 {
        self.zero_moduli.iter().copied().fold(0.0, f64::max)
    }
}

/// Resonance point r = −1/F(λ+i0) of the rank-one family at energy λ.
///
/// The defining eigenvalue identity F/(1+sF) = 1/(s−r) is re-verified at
/// three couplings before the value is returned.
pub fn resonance_point(
    model: &ScalarHerglotzModel,
    lambda: f64,
) -> Result<ResonancePoint, RankOneError> {
    let f_plus = model.eval_boundary(lambda)?;
    resonance_from_value(f_plus, lambda)
}

/// Resonance point r_z = −1/F(z) off the real axis.
pub fn resonance_point_at(
    model: &ScalarHerglotzModel,
    z: Complex64,
) -> Result<ResonancePoint, RankOneError> {
    let value = model.eval(z)?;
    resonance_from_value(value, z.re)
}

fn resonance_from_value(f: Complex64, lambda: f64) -> Result<ResonancePoint, RankOneError> {
    if f.norm() == 0.0 {
        return Err(RankOneError::NoFiniteResonance { lambda });
    }
    let r = -1.0 / f;
    for s in IDENTITY_COUPLINGS {
        let denom = 1.0 + s * f;
        if denom.norm() < 1e-6 {
            continue;
        }
        let lhs = f / denom;
        let rhs = 1.0 / (s - r);
        let deviation = (lhs - rhs).norm();
        if deviation > 1e-12 * (1.0 + lhs.norm()) {
            return Err(RankOneError::IdentityViolated { deviation });
        }
    }
    Ok(ResonancePoint::new(r, 1))
}

/// Unit-modulus scattering eigenvalue at real coupling r:
/// (1 + r·conj F₊)/(1 + r·F₊).
pub fn scattering_eigenvalue(
    model: &ScalarHerglotzModel,
    lambda: f64,
    r: f64,
) -> Result<Complex64, RankOneError> {
    let f_plus = model.eval_boundary(lambda)?;
    eigenvalue_from_value(f_plus, r)
}

fn eigenvalue_from_value(f_plus: Complex64, r: f64) -> Result<Complex64, RankOneError> {
    let denom = 1.0 + r * f_plus;
    if denom.norm() < DENOM_TOL {
        return Err(RankOneError::AtRealResonance { coupling: r });
    }
    // For real r the numerator is exactly the conjugate of the denominator,
    // so the value has unit modulus by construction.
    Ok(denom.conj() / denom)
}

/// Grid of couplings over [a, b] refined until adjacent eigenvalue
/// arguments differ by at most a quarter of the unwrapping ceiling.
fn refined_samples(
    f_plus: Complex64,
    a: f64,
    b: f64,
) -> Result<(Vec<f64>, Vec<Complex64>), RankOneError> {
    if a == b {
        return Ok((vec![a], vec![eigenvalue_from_value(f_plus, a)?]));
    }
    let mut grid: Vec<f64> = (0..=32)
        .map(|k| a + (b - a) * (f64::from(k) / 32.0))
        .collect();
    grid[32] = b;
    let mut values = grid
        .iter()
        .map(|&r| eigenvalue_from_value(f_plus, r))
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
                    next_values.push(eigenvalue_from_value(f_plus, mid)?);
                    inserted = true;
                }
            }
        }
        next_grid.push(grid[grid.len() - 1]);
        next_values.push(values[values.len() - 1]);
        grid = next_grid;
        values = next_values;
        if !inserted {
            return Ok((grid, values));
        }
        if grid.len() > MAX_GRID_POINTS {
            return Err(RankOneError::ExcessiveRefinement { points: grid.len() });
        }
    }
    Err(RankOneError::ExcessiveRefinement { points: grid.len() })
}

/// θ(b) − θ(a) of the continuous branch; independent of how the branch is
/// anchored.
fn phase_change_from_value(f_plus: Complex64, a: f64, b: f64) -> Result<f64, RankOneError> {
    if a == b {
        return Ok(0.0);
    }
    let (_, values) = refined_samples(f_plus, a, b)?;
    let anchor = values[0].arg();
    let samples = unwrap_phase_from(&values, 0, anchor)?;
    Ok(samples.total_change())
}

/// Location of the real resonance point, if the model has one at λ.
fn real_resonance(f_plus: Complex64, lambda: f64) -> Result<Option<f64>, RankOneError> {
    let point = resonance_from_value(f_plus, lambda)?;
    Ok(if point.is_real() {
        Some(point.alpha())
    } else {
        None
    })
}

/// Continuous scattering phase θ₁(λ,·) over [a, b] with θ₁(λ,0) = 0.
///
/// A real resonance point anywhere in the hull of {0} ∪ [a, b] blocks the
/// trace (the branch cannot be continued, or even anchored, through the
/// singular coupling) and is reported for splitting.
pub fn phase_trace(
    model: &ScalarHerglotzModel,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<PhaseTrace, RankOneError> {
    assert!(a <= b, "phase_trace expects an ordered coupling range");
    let f_plus = model.eval_boundary(lambda)?;
    if let Some(alpha) = real_resonance(f_plus, lambda)? {
        let hull = (a.min(0.0), b.max(0.0));
        if alpha >= hull.0 && alpha <= hull.1 {
            return Err(RankOneError::SplitRequired { resonance: alpha });
        }
    }

    let (mut grid, mut values) = refined_samples(f_plus, a, b)?;
    let (anchor_index, anchor_value) = if a <= 0.0 && 0.0 <= b {
        // Make sure the normalization point is on the grid exactly.
        let index = match grid.binary_search_by(|g| g.partial_cmp(&0.0).unwrap()) {
            Ok(index) => index,
            Err(index) => {
                grid.insert(index, 0.0);
                values.insert(index, eigenvalue_from_value(f_plus, 0.0)?);
                index
            }
        };
        (index, 0.0)
    } else if a > 0.0 {
        (0, phase_change_from_value(f_plus, 0.0, a)?)
    } else {
        (grid.len() - 1, -phase_change_from_value(f_plus, b, 0.0)?)
    };

    let samples = unwrap_phase_from(&values, anchor_index, anchor_value)?;
    Ok(PhaseTrace {
        lambda,
        grid,
        theta: samples.arguments().to_vec(),
    })
}

/// θ₁(λ; b) − θ₁(λ; a): the phase accumulated between two couplings.
///
/// Unlike [`phase_trace`] this needs no anchor transport, so only [a, b]
/// itself must be free of real resonance points.
pub fn phase_change(
    model: &ScalarHerglotzModel,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<f64, RankOneError> {
    assert!(a <= b, "phase_change expects an ordered coupling range");
    let f_plus = model.eval_boundary(lambda)?;
    if let Some(alpha) = real_resonance(f_plus, lambda)? {
        if alpha >= a && alpha <= b {
            return Err(RankOneError::SplitRequired { resonance: alpha });
        }
    }
    phase_change_from_value(f_plus, a, b)
}

/// Closed-form Lorentzian derivative θ′₁(r) = −2β/((r−α)² + β²).
///
/// Real resonance points are treated as exactly real: the derivative is 0
/// away from α and singular at α.
pub fn phase_derivative(point: &ResonancePoint, r: f64) -> Result<f64, RankOneError> {
    let alpha = point.alpha();
    if point.is_real() {
        if (r - alpha).abs() <= EPS_REAL * (1.0 + alpha.abs()) {
            return Err(RankOneError::DerivativeSingularity { coupling: r });
        }
        return Ok(0.0);
    }
    let beta = point.beta();
    Ok(-2.0 * beta / ((r - alpha) * (r - alpha) + beta * beta))
}

/// Centered finite difference of the phase at coupling r with step h.
fn phase_fd(f_plus: Complex64, r: f64, h: f64) -> Result<f64, RankOneError> {
    Ok(phase_change_from_value(f_plus, r - h, r + h)? / (2.0 * h))
}

/// Eq.-(1) check: the finite-difference phase derivative at the resonance
/// center r = α against the closed target −2/β.
///
/// When the plain step h leaves a residual above 1e−6, one Richardson pass
/// at h/2 is tried and the better of the two is reported.
pub fn breit_wigner_check(
    model: &ScalarHerglotzModel,
    lambda: f64,
    h: f64,
) -> Result<BreitWignerCheck, RankOneError> {
    assert!(h > 0.0 && h.is_finite(), "step must be positive");
    let f_plus = model.eval_boundary(lambda)?;
    let point = resonance_from_value(f_plus, lambda)?;
    if point.is_real() {
        return Err(RankOneError::NotApplicable { lambda });
    }
    let target = -2.0 / point.beta();
    let alpha = point.alpha();

    let plain = phase_fd(f_plus, alpha, h)?;
    let mut best = BreitWignerCheck {
        finite_difference: plain,
        target,
        residual: (plain - target).abs(),
    };
    if best.residual > 1e-6 {
        let half = phase_fd(f_plus, alpha, h / 2.0)?;
        let richardson = (4.0 * half - plain) / 3.0;
        let residual = (richardson - target).abs();
        if residual < best.residual {
            best = BreitWignerCheck {
                finite_difference: richardson,
                target,
                residual,
            };
        }
    }
    Ok(best)
}

/// |θ′₁(r) − (−2·Im(F₊/(1+rF₊)))|: the Lorentzian against the trace of
/// V·Im R, which for rank one collapses to Im(F/(1+rF)).
pub fn trace_identity_check(
    model: &ScalarHerglotzModel,
    lambda: f64,
    r: f64,
) -> Result<f64, RankOneError> {
    let f_plus = model.eval_boundary(lambda)?;
    let denom = 1.0 + r * f_plus;
    if denom.norm() < DENOM_TOL {
        return Err(RankOneError::AtRealResonance { coupling: r });
    }
    let trace_side = -2.0 * (f_plus / denom).im;
    let point = resonance_from_value(f_plus, lambda)?;
    let lorentzian = phase_derivative(&point, r)?;
    Ok((lorentzian - trace_side).abs())
}

/// θ₁(λ; +∞, −∞): exactly −2π·sign(β) for β ≠ 0, and 0 for a real
/// resonance point (no absolutely continuous phase motion).
pub fn total_phase_variation(
    model: &ScalarHerglotzModel,
    lambda: f64,
) -> Result<f64, RankOneError> {
    let point = resonance_point(model, lambda)?;
    if point.is_real() {
        return Ok(0.0);
    }
    Ok(-2.0 * std::f64::consts::PI * point.beta().signum())
}

/// Absolutely continuous spectral shift over the coupling interval [a, b]:
/// ξ^(a) = −(θ₁(λ;b) − θ₁(λ;a))/2π via the arctan antiderivative.
///
/// Infinite endpoints are allowed; arctan saturates at ±π/2.
pub fn ssf_ac(
    model: &ScalarHerglotzModel,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<f64, RankOneError> {
    assert!(a <= b, "ssf_ac expects an ordered coupling range");
    let point = resonance_point(model, lambda)?;
    if point.is_real() {
        let alpha = point.alpha();
        if alpha >= a && alpha <= b {
            return Err(RankOneError::SplitRequired { resonance: alpha });
        }
        return Ok(0.0);
    }
    let alpha = point.alpha();
    let beta = point.beta();
    let primitive = |s: f64| ((s - alpha) / beta.abs()).atan();
    Ok(beta.signum() / std::f64::consts::PI * (primitive(b) - primitive(a)))
}

/// Samples the continued eigenvalue s ↦ (1+s·conj F₊)/(1+s·F₊) on small
/// circles around the resonance point (pole) and its conjugate (zero), and
/// on the real axis (unit modulus).
pub fn continuation_pole_check(
    model: &ScalarHerglotzModel,
    lambda: f64,
) -> Result<ContinuationReport, RankOneError> {
    let f_plus = model.eval_boundary(lambda)?;
    let point = resonance_from_value(f_plus, lambda)?;
    if point.is_real() {
        return Err(RankOneError::NotApplicable { lambda });
    }
    let continued = |s: Complex64| (1.0 + s * f_plus.conj()) / (1.0 + s * f_plus);

    let radius = 1e-4;
    let circle = |center: Complex64| -> Vec<f64> {
        (0..16)
            .map(|k| {
                let angle = 2.0 * std::f64::consts::PI * f64::from(k) / 16.0;
                continued(center + Complex64::from_polar(radius, angle)).norm()
            })
            .collect()
    };
    let pole_moduli = circle(point.value());
    let zero_moduli = circle(point.value().conj());

    let unitarity_deviation = (-8..=8)
        .map(|k| {
            let r = 0.5 * f64::from(k);
            (continued(Complex64::new(r, 0.0)).norm() - 1.0).abs()
        })
        .fold(0.0, f64::max);

    Ok(ContinuationReport {
        pole_moduli,
        zero_moduli,
        unitarity_deviation,
        pole_bound: 1e3,
        zero_bound: 1e-3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cauchy() -> ScalarHerglotzModel {
        ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap()
    }

    #[test]
    fn cauchy_resonance_at_zero() {
        let point = resonance_point(&cauchy(), 0.0).unwrap();
        assert!((point.value() - c(0.0, 1.0)).norm() < 1e-15);
        assert!(!point.is_real());
        assert_eq!(point.multiplicity(), 1);
    }

    #[test]
    fn uniform_resonance_is_real() {
        let model = ScalarHerglotzModel::uniform(0.0, 1.0).unwrap();
        let point = resonance_point(&model, 2.0).unwrap();
        assert!(point.is_real());
        assert!((point.alpha() - 1.0 / std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn semicircle_resonance_outside_band() {
        let model = ScalarHerglotzModel::semicircle(2.0).unwrap();
        let point = resonance_point(&model, 3.0).unwrap();
        assert!(point.is_real());
        assert!((point.alpha() - (3.0 + 5.0f64.sqrt()) / 2.0).abs() < 1e-13);
    }

    #[test]
    fn scattering_eigenvalue_reference_values() {
        let model = cauchy();
        assert!((scattering_eigenvalue(&model, 0.0, 0.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((scattering_eigenvalue(&model, 0.0, 1.0).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
        let large = scattering_eigenvalue(&model, 0.0, 1e9).unwrap();
        assert!((large - c(-1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn eigenvalue_modulus_is_one() {
        let model = ScalarHerglotzModel::semicircle(2.0).unwrap();
        for k in 0..40 {
            let r = -2.0 + 0.1 * f64::from(k);
            let s = scattering_eigenvalue(&model, 0.7, r).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cauchy_phase_trace_is_minus_two_arctan() {
        let trace = phase_trace(&cauchy(), 0.0, 0.0, 1.0).unwrap();
        assert_eq!(trace.theta()[0], 0.0);
        for (r, theta) in trace.grid().iter().zip(trace.theta()) {
            assert!((theta - (-2.0 * r.atan())).abs() < 1e-12, "at r = {r}");
        }
        assert!((trace.total_change() + PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_range_with_zero() {
        let trace = phase_trace(&cauchy(), 0.0, 0.0, 0.0).unwrap();
        assert_eq!(trace.grid(), &[0.0]);
        assert_eq!(trace.theta(), &[0.0]);
    }

    #[test]
    fn symmetric_range_is_odd() {
        let trace = phase_trace(&cauchy(), 0.0, -1.0, 1.0).unwrap();
        assert!((trace.total_change() + PI).abs() < 1e-12);
        // The anchor sits at r = 0 with θ = 0.
        let zero_index = trace.grid().iter().position(|&g| g == 0.0).unwrap();
        assert_eq!(trace.theta()[zero_index], 0.0);
    }

    #[test]
    fn transported_anchor_away_from_zero() {
        // θ(r) = −2 arctan r continues to hold on [1, 2].
        let trace = phase_trace(&cauchy(), 0.0, 1.0, 2.0).unwrap();
        for (r, theta) in trace.grid().iter().zip(trace.theta()) {
            assert!((theta - (-2.0 * r.atan())).abs() < 1e-12, "at r = {r}");
        }
        let below = phase_trace(&cauchy(), 0.0, -3.0, -1.5).unwrap();
        for (r, theta) in below.grid().iter().zip(below.theta()) {
            assert!((theta - (-2.0 * r.atan())).abs() < 1e-12, "at r = {r}");
        }
    }

    #[test]
    fn real_resonance_blocks_the_trace() {
        let model = ScalarHerglotzModel::uniform(0.0, 1.0).unwrap();
        // Resonance at 1/ln 2 ≈ 1.44 lies inside [0, 2].
        match phase_trace(&model, 2.0, 0.0, 2.0) {
            Err(RankOneError::SplitRequired { resonance }) => {
                assert!((resonance - 1.0 / std::f64::consts::LN_2).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        // It also blocks transport from 0 even when [a, b] itself is clean.
        assert!(matches!(
            phase_trace(&model, 2.0, 2.0, 3.0),
            Err(RankOneError::SplitRequired { .. })
        ));
    }

    #[test]
    fn phase_change_matches_closed_form() {
        let change = phase_change(&cauchy(), 0.0, 0.25, 1.75).unwrap();
        let want = -2.0 * (1.75f64.atan() - 0.25f64.atan());
        assert!((change - want).abs() < 1e-12);
        // Only [a, b] itself must avoid the real resonance point.
        let model = ScalarHerglotzModel::uniform(0.0, 1.0).unwrap();
        assert!(phase_change(&model, 2.0, 2.0, 3.0).is_ok());
        assert!(matches!(
            phase_change(&model, 2.0, 1.0, 2.0),
            Err(RankOneError::SplitRequired { .. })
        ));
    }

    #[test]
    fn phase_derivative_reference_values() {
        let point = ResonancePoint::new(c(0.0, 1.0), 1);
        assert!((phase_derivative(&point, 0.0).unwrap() + 2.0).abs() < 1e-15);
        assert!((phase_derivative(&point, 1.0).unwrap() + 1.0).abs() < 1e-15);
        let real_point = ResonancePoint::new(c(2.0, 0.0), 1);
        assert_eq!(phase_derivative(&real_point, 5.0).unwrap(), 0.0);
        assert!(matches!(
            phase_derivative(&real_point, 2.0),
            Err(RankOneError::DerivativeSingularity { .. })
        ));
    }

    #[test]
    fn breit_wigner_cauchy() {
        let check = breit_wigner_check(&cauchy(), 0.0, 1e-4).unwrap();
        assert!((check.target + 2.0).abs() < 1e-15);
        assert!(check.residual < 1e-6, "residual {}", check.residual);
    }

    #[test]
    fn breit_wigner_semicircle_at_one() {
        let model = ScalarHerglotzModel::semicircle(2.0).unwrap();
        let check = breit_wigner_check(&model, 1.0, 1e-4).unwrap();
        let want = -4.0 / 3.0f64.sqrt();
        assert!((check.target - want).abs() < 1e-12);
        assert!(check.residual < 1e-6, "residual {}", check.residual);
    }

    #[test]
    fn breit_wigner_rejects_real_resonance() {
        let model = ScalarHerglotzModel::uniform(0.0, 1.0).unwrap();
        assert!(matches!(
            breit_wigner_check(&model, 2.0, 1e-4),
            Err(RankOneError::NotApplicable { .. })
        ));
    }

    #[test]
    fn trace_identity_reference_values() {
        assert!(trace_identity_check(&cauchy(), 0.0, 0.0).unwrap() < 1e-14);
        assert!(trace_identity_check(&cauchy(), 0.0, 1.0).unwrap() < 1e-14);
        let model = ScalarHerglotzModel::uniform(0.0, 1.0).unwrap();
        assert!(trace_identity_check(&model, 2.0, 0.0).unwrap() < 1e-14);
    }

    #[test]
    fn total_variation_values() {
        assert!((total_phase_variation(&cauchy(), 0.0).unwrap() + 2.0 * PI).abs() < 1e-15);
        let semi = ScalarHerglotzModel::semicircle(2.0).unwrap();
        assert!((total_phase_variation(&semi, 1.0).unwrap() + 2.0 * PI).abs() < 1e-15);
        let uniform = ScalarHerglotzModel::uniform(0.0, 1.0).unwrap();
        assert_eq!(total_phase_variation(&uniform, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn ssf_ac_reference_values() {
        assert!((ssf_ac(&cauchy(), 0.0, 0.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(ssf_ac(&cauchy(), 0.0, 0.7, 0.7).unwrap(), 0.0);
        let full = ssf_ac(&cauchy(), 0.0, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!((full - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ssf_ac_is_additive() {
        let model = ScalarHerglotzModel::semicircle(2.0).unwrap();
        let (a, b, cc) = (-1.5, 0.3, 2.0);
        let whole = ssf_ac(&model, 0.4, a, cc).unwrap();
        let split =
            ssf_ac(&model, 0.4, a, b).unwrap() + ssf_ac(&model, 0.4, b, cc).unwrap();
        assert!((whole - split).abs() < 1e-12);
    }

    #[test]
    fn ssf_ac_matches_phase_trace() {
        let trace = phase_trace(&cauchy(), 0.0, 0.0, 1.0).unwrap();
        let from_trace = -trace.total_change() / (2.0 * PI);
        let closed = ssf_ac(&cauchy(), 0.0, 0.0, 1.0).unwrap();
        assert!((from_trace - closed).abs() < 1e-8);
    }

    #[test]
    fn continuation_finds_pole_and_zero() {
        let report = continuation_pole_check(&cauchy(), 0.0).unwrap();
        assert!(report.passed(), "report {report:?}");
        assert!(report.pole_min() > 1e3);
        assert!(report.zero_max() < 1e-3);
        let semi = ScalarHerglotzModel::semicircle(2.0).unwrap();
        assert!(continuation_pole_check(&semi, 1.0).unwrap().passed());
    }

    #[test]
    fn conjugation_symmetry_of_resonance() {
        let model = ScalarHerglotzModel::semicircle(2.0).unwrap();
        let y = 1e-3;
        let upper = resonance_point_at(&model, c(0.4, y)).unwrap();
        let lower = resonance_point_at(&model, c(0.4, -y)).unwrap();
        assert!((lower.value() - upper.value().conj()).norm() < 1e-12);
    }

    #[test]
    fn resonance_map_is_herglotz_for_positive_coupling() {
        let models = [
            cauchy(),
            ScalarHerglotzModel::semicircle(2.0).unwrap(),
            ScalarHerglotzModel::uniform(0.0, 1.0).unwrap(),
        ];
        for model in &models {
            for &y in &[1e-1, 1e-3, 1e-6] {
                let point = resonance_point_at(model, c(0.3, y)).unwrap();
                assert!(point.beta() > 0.0, "Im r <= 0 at y = {y}");
            }
        }
    }

    #[test]
    fn phase_range_stays_in_open_interval() {
        // Rolle consequence: θ-change over any interval is in (−2π, 0).
        let model = ScalarHerglotzModel::semicircle(2.0).unwrap();
        for &(a, b) in &[(-40.0, 40.0), (0.0, 1e-6), (-7.0, -6.0), (0.5, 300.0)] {
            let change = phase_change_from_value(
                model.eval_boundary(1.2).unwrap(),
                a,
                b,
            )
            .unwrap();
            assert!(change < -1e-12 || b - a < 1e-6, "change {change} on [{a},{b}]");
            assert!(change > -2.0 * PI + 1e-12, "change {change} on [{a},{b}]");
        }
    }
}
