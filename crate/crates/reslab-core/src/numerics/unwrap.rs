use num_complex::Complex64;

use super::NumericsError;

/// Modulus slack allowed on the input points.
const UNIT_TOL: f64 = 1e-12;
/// Angular slack allowed between the anchor and its sample.
const ANCHOR_TOL: f64 = 1e-12;
/// Adjacent-step ceiling. Exact quarter turns are legal; anything beyond
/// risks aliasing near a pole, so the caller must refine its grid first.
const MAX_JUMP: f64 = std::f64::consts::FRAC_PI_2 + 1e-9;

/// A continuous branch of the argument along a path of unit-modulus points.
#[derive(Debug, Clone)]
pub struct PhaseSamples {
    arguments: Vec<f64>,
    source_points: Vec<Complex64>,
}

impl PhaseSamples {
    /// Continuous arguments, one per source point.
    pub fn arguments(&self) -> &[f64] {
        &self.arguments
    }

    pub fn source_points(&self) -> &[Complex64] {
        &self.source_points
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    /// Argument change from the first sample to the last.
    pub fn total_change(&self) -> f64 {
        self.arguments[self.arguments.len() - 1] - self.arguments[0]
    }
}

/// Principal argument difference between consecutive points.
fn step(prev: Complex64, next: Complex64) -> f64 {
    (next / prev).arg()
}

/// Continuous argument along `points`, anchored to `anchor` at the first
/// point. See [`unwrap_phase_from`] for anchoring elsewhere.
pub fn unwrap_phase(points: &[Complex64], anchor: f64) -> Result<PhaseSamples, NumericsError> {
    unwrap_phase_from(points, 0, anchor)
}

/// Continuous argument along `points` with `arguments[anchor_index] =
/// anchor`, propagated in both directions by principal-value increments.
///
/// Each point must have unit modulus and each adjacent pair must differ in
/// argument by at most a quarter turn; a larger step is ambiguous (the true
/// path may have wound the other way), so it is reported for grid
/// refinement rather than guessed at.
pub fn unwrap_phase_from(
    points: &[Complex64],
    anchor_index: usize,
    anchor: f64,
) -> Result<PhaseSamples, NumericsError> {
    if points.is_empty() {
        return Err(NumericsError::EmptyInput);
    }
    assert!(anchor_index < points.len(), "anchor index out of range");
    if !anchor.is_finite() {
        return Err(NumericsError::NonFiniteInput);
    }
    for (index, p) in points.iter().enumerate() {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(NumericsError::NonFiniteInput);
        }
        let modulus = p.norm();
        if (modulus - 1.0).abs() > UNIT_TOL {
            return Err(NumericsError::NotUnitModulus { index, modulus });
        }
    }

    let anchored = points[anchor_index];
    let deviation = wrap_to_principal(anchor - anchored.arg()).abs();
    if deviation > ANCHOR_TOL {
        return Err(NumericsError::AnchorMismatch { anchor, deviation });
    }

    // Validate every adjacent step before committing to any output, so the
    // reported index does not depend on the anchor position.
    let mut steps = Vec::with_capacity(points.len().saturating_sub(1));
    for i in 0..points.len() - 1 {
        let jump = step(points[i], points[i + 1]);
        if jump.abs() > MAX_JUMP {
            return Err(NumericsError::RefinementNeeded {
                index: i + 1,
                jump: jump.abs(),
            });
        }
        steps.push(jump);
    }

    let mut arguments = vec![0.0; points.len()];
    arguments[anchor_index] = anchor;
    for i in anchor_index..points.len() - 1 {
        arguments[i + 1] = arguments[i] + steps[i];
    }
    for i in (0..anchor_index).rev() {
        arguments[i] = arguments[i + 1] - steps[i];
    }

    Ok(PhaseSamples {
        arguments,
        source_points: points.to_vec(),
    })
}

/// Wraps an angle into (-pi, pi].
fn wrap_to_principal(theta: f64) -> f64 {
    Complex64::from_polar(1.0, theta).arg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quarter_turn_path() -> Vec<Complex64> {
        vec![
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
            c(1.0, 0.0),
        ]
    }

    #[test]
    fn counterclockwise_quarter_turns() {
        let got = unwrap_phase(&quarter_turn_path(), 0.0).unwrap();
        let want = [0.0, FRAC_PI_2, PI, 1.5 * PI, 2.0 * PI];
        for (g, w) in got.arguments().iter().zip(want.iter()) {
            assert!((g - w).abs() < 1e-14);
        }
        assert!((got.total_change() - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn constant_path() {
        let got = unwrap_phase(&[c(1.0, 0.0); 3], 0.0).unwrap();
        assert_eq!(got.arguments(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn clockwise_quarter_turns() {
        let points = vec![
            c(1.0, 0.0),
            c(0.0, -1.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(1.0, 0.0),
        ];
        let got = unwrap_phase(&points, 0.0).unwrap();
        let want = [0.0, -FRAC_PI_2, -PI, -1.5 * PI, -2.0 * PI];
        for (g, w) in got.arguments().iter().zip(want.iter()) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn branch_reconstruction_invariant() {
        let points: Vec<Complex64> = (0..200)
            .map(|k| Complex64::from_polar(1.0, 0.011 * (k as f64) * (k as f64 + 1.0) / 50.0))
            .collect();
        let anchor = points[0].arg();
        let got = unwrap_phase(&points, anchor).unwrap();
        for (arg, p) in got.arguments().iter().zip(got.source_points()) {
            assert!((Complex64::from_polar(1.0, *arg) - p).norm() < 1e-12);
        }
        for w in got.arguments().windows(2) {
            assert!((w[1] - w[0]).abs() < PI);
        }
    }

    #[test]
    fn oversized_jump_is_reported() {
        // Half-turn step is ambiguous.
        let points = vec![c(1.0, 0.0), c(-1.0, 0.0)];
        match unwrap_phase(&points, 0.0) {
            Err(NumericsError::RefinementNeeded { index, jump }) => {
                assert_eq!(index, 1);
                assert!((jump - PI).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_unit_modulus_is_reported() {
        let points = vec![c(1.0, 0.0), c(0.0, 0.5)];
        assert!(matches!(
            unwrap_phase(&points, 0.0),
            Err(NumericsError::NotUnitModulus { index: 1, .. })
        ));
    }

    #[test]
    fn inconsistent_anchor_is_reported() {
        let points = vec![c(1.0, 0.0), c(0.0, 1.0)];
        assert!(matches!(
            unwrap_phase(&points, 0.3),
            Err(NumericsError::AnchorMismatch { .. })
        ));
    }

    #[test]
    fn interior_anchor_propagates_both_ways() {
        let points = quarter_turn_path();
        let got = unwrap_phase_from(&points, 2, PI).unwrap();
        let want = [0.0, FRAC_PI_2, PI, 1.5 * PI, 2.0 * PI];
        for (g, w) in got.arguments().iter().zip(want.iter()) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn winding_anchor_offsets_by_full_turns() {
        // The same source point admits branches differing by 2*pi.
        let points = vec![c(1.0, 0.0), c(0.0, 1.0)];
        let got = unwrap_phase(&points, 2.0 * PI).unwrap();
        assert!((got.arguments()[0] - 2.0 * PI).abs() < 1e-14);
        assert!((got.arguments()[1] - 2.5 * PI).abs() < 1e-14);
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(
            unwrap_phase(&[], 0.0),
            Err(NumericsError::EmptyInput)
        ));
    }
}
