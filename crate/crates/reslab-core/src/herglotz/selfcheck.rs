use num_complex::Complex64;

use super::scalar::ScalarKind;
use super::{HerglotzError, ScalarHerglotzModel};
use crate::numerics::adaptive_stieltjes;

/// Tolerance for the sign and symmetry checks.
const EXACT_TOL: f64 = 1e-12;
/// Tolerance for the closed-form vs quadrature comparison.
const ORACLE_TOL: f64 = 1e-8;
/// Absolute tolerance requested from the quadrature itself; the rest of the
/// oracle budget absorbs tail truncation of full-line densities.
const QUAD_TOL: f64 = 2e-9;
/// Cauchy tails are cut at this many scale-widths from the center; beyond
/// it the truncated mass contributes under 2e-9 per unit of 1/scale.
const CAUCHY_CUT: f64 = 1e5;
/// Quadrature oracles run on at most this many samples.
const ORACLE_SAMPLES: usize = 8;

/// One verified property at one sample point.
#[derive(Debug, Clone)]
pub struct SelfCheckItem {
    pub description: String,
    /// Measured violation; 0 means the property held exactly.
    pub violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Itemized result of [`herglotz_selfcheck`].
#[derive(Debug, Clone)]
pub struct SelfCheckReport {
    pub items: Vec<SelfCheckItem>,
}

impl SelfCheckReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|item| item.passed)
    }

    /// Largest violation-to-tolerance ratio over all items; ≤ 1 iff all
    /// items passed.
    pub fn worst_ratio(&self) -> f64 {
        self.items
            .iter()
            .map(|item| item.violation / item.tolerance)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SelfCheckItem> {
        self.items.iter().filter(|item| !item.passed)
    }
}

/// Verifies the defining Herglotz properties of a scalar model at the given
/// upper-half-plane samples: nonnegative imaginary part, conjugate symmetry
/// against the mirrored points, and agreement of the closed form with a
/// quadrature of the underlying measure (on the first few samples; the
/// integral oracle is slow).
pub fn herglotz_selfcheck(
    model: &ScalarHerglotzModel,
    samples: &[Complex64],
) -> Result<SelfCheckReport, HerglotzError> {
    let mut items = Vec::new();
    for (index, &z) in samples.iter().enumerate() {
        if !(z.im.is_finite() && z.im > 0.0) {
            return Err(HerglotzError::SampleNotInUpperHalfPlane { z });
        }
        let value = model.eval(z)?;

        let positivity = (-value.im).max(0.0);
        items.push(SelfCheckItem {
            description: format!("Im F(z) >= 0 at z = {z}"),
            violation: positivity,
            tolerance: EXACT_TOL,
            passed: positivity <= EXACT_TOL,
        });

        let mirrored = model.eval(z.conj())?;
        let asymmetry = (mirrored - value.conj()).norm();
        items.push(SelfCheckItem {
            description: format!("F(conj z) = conj F(z) at z = {z}"),
            violation: asymmetry,
            tolerance: EXACT_TOL,
            passed: asymmetry <= EXACT_TOL,
        });

        if index < ORACLE_SAMPLES {
            let oracle = stieltjes_oracle(model, z)?;
            let mismatch = (value - oracle).norm();
            items.push(SelfCheckItem {
                description: format!("closed form matches quadrature at z = {z}"),
                violation: mismatch,
                tolerance: ORACLE_TOL,
                passed: mismatch <= ORACLE_TOL,
            });
        }
    }
    Ok(SelfCheckReport { items })
}

/// ∫ dμ(t)/(t−z) computed from the measure itself: adaptive quadrature over
/// each density piece plus the exact atom sum.
fn stieltjes_oracle(
    model: &ScalarHerglotzModel,
    z: Complex64,
) -> Result<Complex64, HerglotzError> {
    let mut total = Complex64::new(0.0, 0.0);
    accumulate_oracle(model, 1.0, z, &mut total)?;
    Ok(total)
}

fn accumulate_oracle(
    model: &ScalarHerglotzModel,
    multiplier: f64,
    z: Complex64,
    total: &mut Complex64,
) -> Result<(), HerglotzError> {
    match model.kind() {
        ScalarKind::Cauchy {
            center,
            scale,
            mass,
        } => {
            let (c, s, m) = (*center, *scale, multiplier * mass);
            let weight = move |t: f64| {
                m * (s / std::f64::consts::PI) / ((t - c) * (t - c) + s * s)
            };
            // Integrate over geometric shells around the density peak. A
            // single panel spanning the whole truncated line hides the peak
            // between Gauss nodes; shell edges at the peak and at dyadic
            // distances keep every feature visible to the error estimate.
            let mut radii = vec![0.0];
            let mut r = s;
            while r < CAUCHY_CUT * s {
                radii.push(r);
                r *= 8.0;
            }
            radii.push(CAUCHY_CUT * s);
            let mut edges: Vec<f64> = radii.iter().rev().map(|r| c - r).collect();
            edges.extend(radii.iter().skip(1).map(|r| c + r));
            let shell_tol = QUAD_TOL / (edges.len() - 1) as f64;
            for pair in edges.windows(2) {
                *total += adaptive_stieltjes(&weight, pair[0], pair[1], z, shell_tol)?;
            }
        }
        ScalarKind::Semicircle { halfwidth, mass } => {
            let (w, m) = (*halfwidth, multiplier * mass);
            let weight = move |t: f64| {
                m * 2.0 / (std::f64::consts::PI * w * w) * (w * w - t * t).max(0.0).sqrt()
            };
            *total += adaptive_stieltjes(&weight, -w, w, z, QUAD_TOL)?;
        }
        ScalarKind::Uniform { a, b, mass } => {
            let density = multiplier * mass / (b - a);
            let weight = move |_t: f64| density;
            *total += adaptive_stieltjes(&weight, *a, *b, z, QUAD_TOL)?;
        }
        ScalarKind::PointMasses { masses } => {
            for &(position, weight) in masses {
                *total += multiplier * weight / (Complex64::new(position, 0.0) - z);
            }
        }
        ScalarKind::Combination { terms } => {
            for (weight, member) in terms {
                if *weight > 0.0 {
                    accumulate_oracle(member, multiplier * weight, z, total)?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cauchy_passes_on_reference_grid() {
        let model = ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap();
        let report =
            herglotz_selfcheck(&model, &[c(0.0, 1.0), c(1.0, 1.0), c(-2.0, 0.5)]).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
        assert!(report.worst_ratio() <= 1.0);
    }

    #[test]
    fn combination_passes_by_linearity() {
        let model = ScalarHerglotzModel::combination(vec![
            (0.6, ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap()),
            (0.4, ScalarHerglotzModel::uniform(-1.0, 1.0).unwrap()),
        ])
        .unwrap();
        let report =
            herglotz_selfcheck(&model, &[c(0.0, 1.0), c(1.0, 1.0), c(-2.0, 0.5)]).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn single_atom_has_positive_imaginary_part_at_i() {
        let model = ScalarHerglotzModel::point_masses(vec![(0.0, 1.0)]).unwrap();
        let report = herglotz_selfcheck(&model, &[c(0.0, 1.0)]).unwrap();
        assert!(report.all_passed());
        // Direct value 1/(0 - i) = i has imaginary part 1.
        assert!((model.eval(c(0.0, 1.0)).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn semicircle_oracle_agrees() {
        let model = ScalarHerglotzModel::semicircle(1.3).unwrap();
        let report = herglotz_selfcheck(&model, &[c(0.2, 0.4)]).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn lower_half_plane_sample_is_rejected() {
        let model = ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap();
        assert!(matches!(
            herglotz_selfcheck(&model, &[c(0.0, -1.0)]),
            Err(HerglotzError::SampleNotInUpperHalfPlane { .. })
        ));
    }
}
