use num_complex::Complex64;

use super::NumericsError;

/// Starting height above the real axis for the extrapolation ladder.
const Y0: f64 = 1e-2;
/// Number of halvings; the final height is `Y0 / 2^LEVELS`.
const LEVELS: usize = 20;
/// Relative error estimate above which the boundary limit is declared
/// nonexistent (atom at the point, or a density singularity).
const DIVERGENCE_RTOL: f64 = 1e-4;

/// Result of extrapolating upper-half-plane values down to the real axis.
#[derive(Debug, Clone, Copy)]
pub struct Extrapolated {
    pub value: Complex64,
    /// Difference of the last two tableau entries; an honest estimate of the
    /// extrapolation error for limits that exist.
    pub error_estimate: f64,
}

/// Richardson extrapolation of `y -> f(y)` to `y = 0+`.
///
/// `f(y)` is sampled at heights `Y0 / 2^k` and pushed through two
/// elimination stages, removing the `y` and `y^2` terms of the expansion.
/// When the limit does not exist the tableau keeps moving instead of
/// settling, which the final error estimate exposes; that case is reported
/// as a divergent boundary limit at `lambda` (which is used only for the
/// error message; the heights are what `f` consumes).
pub fn boundary_extrapolate<F>(f: &F, lambda: f64) -> Result<Extrapolated, NumericsError>
where
    F: Fn(f64) -> Complex64,
{
    let mut t0 = Vec::with_capacity(LEVELS + 1);
    let mut y = Y0;
    for _ in 0..=LEVELS {
        let sample = f(y);
        if !sample.re.is_finite() || !sample.im.is_finite() {
            return Err(NumericsError::NonFiniteInput);
        }
        t0.push(sample);
        y *= 0.5;
    }

    let t1: Vec<Complex64> = t0
        .windows(2)
        .map(|w| 2.0 * w[1] - w[0])
        .collect();
    let t2: Vec<Complex64> = t1
        .windows(2)
        .map(|w| (4.0 * w[1] - w[0]) / 3.0)
        .collect();

    let value = *t2.last().expect("tableau has at least two entries");
    let error_estimate = (value - t2[t2.len() - 2]).norm();

    if error_estimate > DIVERGENCE_RTOL * (1.0 + value.norm()) {
        return Err(NumericsError::DivergentBoundaryLimit { lambda });
    }
    Ok(Extrapolated {
        value,
        error_estimate,
    })
}
