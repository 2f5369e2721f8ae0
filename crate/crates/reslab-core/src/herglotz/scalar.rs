use num_complex::Complex64;

use super::{excluded_point_tol, is_finite_c, HerglotzError};

/// Scalar Herglotz function F(z) = ∫ dμ(t)/(t−z) for a finite positive
/// measure μ from a closed-form catalog.
///
/// Continuous families carry an explicit total mass (1 unless constructed
/// `..._with_mass`); atoms and combinations carry their weights directly.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarHerglotzModel {
    kind: ScalarKind,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum ScalarKind {
    /// Density mass·(scale/π)/((t−center)² + scale²) on all of R.
    Cauchy { center: f64, scale: f64, mass: f64 },
    /// Semicircle density on [−halfwidth, halfwidth], total mass `mass`.
    Semicircle { halfwidth: f64, mass: f64 },
    /// Constant density mass/(b−a) on [a, b].
    Uniform { a: f64, b: f64, mass: f64 },
    /// Atoms Σ weight_j·δ(position_j).
    PointMasses { masses: Vec<(f64, f64)> },
    /// Nonnegative combination Σ weight_i·μ_i.
    Combination { terms: Vec<(f64, ScalarHerglotzModel)> },
}

fn check_mass(mass: f64) -> Result<(), HerglotzError> {
    if !mass.is_finite() || mass <= 0.0 {
        return Err(HerglotzError::NonPositiveMass { value: mass });
    }
    Ok(())
}

impl ScalarHerglotzModel {
    pub fn cauchy(center: f64, scale: f64) -> Result<Self, HerglotzError> {
        Self::cauchy_with_mass(center, scale, 1.0)
    }

    pub fn cauchy_with_mass(center: f64, scale: f64, mass: f64) -> Result<Self, HerglotzError> {
        if !center.is_finite() {
            return Err(HerglotzError::NonFiniteParameter);
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(HerglotzError::NonPositiveScale { value: scale });
        }
        check_mass(mass)?;
        Ok(Self {
            kind: ScalarKind::Cauchy {
                center,
                scale,
                mass,
            },
        })
    }

    pub fn semicircle(halfwidth: f64) -> Result<Self, HerglotzError> {
        Self::semicircle_with_mass(halfwidth, 1.0)
    }

    pub fn semicircle_with_mass(halfwidth: f64, mass: f64) -> Result<Self, HerglotzError> {
        if !halfwidth.is_finite() || halfwidth <= 0.0 {
            return Err(HerglotzError::NonPositiveScale { value: halfwidth });
        }
        check_mass(mass)?;
        Ok(Self {
            kind: ScalarKind::Semicircle { halfwidth, mass },
        })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self, HerglotzError> {
        Self::uniform_with_mass(a, b, 1.0)
    }

    pub fn uniform_with_mass(a: f64, b: f64, mass: f64) -> Result<Self, HerglotzError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(HerglotzError::NonFiniteParameter);
        }
        if a >= b {
            return Err(HerglotzError::EmptyInterval { a, b });
        }
        check_mass(mass)?;
        Ok(Self {
            kind: ScalarKind::Uniform { a, b, mass },
        })
    }

    pub fn point_masses(masses: Vec<(f64, f64)>) -> Result<Self, HerglotzError> {
        for &(position, weight) in &masses {
            if !position.is_finite() {
                return Err(HerglotzError::NonFiniteParameter);
            }
            if !weight.is_finite() || weight <= 0.0 {
                return Err(HerglotzError::NonPositiveWeight { position, weight });
            }
        }
        Ok(Self {
            kind: ScalarKind::PointMasses { masses },
        })
    }

    pub fn combination(terms: Vec<(f64, ScalarHerglotzModel)>) -> Result<Self, HerglotzError> {
        for &(weight, _) in &terms {
            if !weight.is_finite() || weight < 0.0 {
                return Err(HerglotzError::NegativeWeight { weight });
            }
        }
        Ok(Self {
            kind: ScalarKind::Combination { terms },
        })
    }

    pub(crate) fn kind(&self) -> &ScalarKind {
        &self.kind
    }

    /// Total mass of μ.
    pub fn total_mass(&self) -> f64 {
        match &self.kind {
            ScalarKind::Cauchy { mass, .. }
            | ScalarKind::Semicircle { mass, .. }
            | ScalarKind::Uniform { mass, .. } => *mass,
            ScalarKind::PointMasses { masses } => masses.iter().map(|&(_, w)| w).sum(),
            ScalarKind::Combination { terms } => terms
                .iter()
                .map(|(w, m)| w * m.total_mass())
                .sum(),
        }
    }

    /// F(z) for z off the real axis, or real z outside the closed support.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, HerglotzError> {
        if !is_finite_c(z) {
            return Err(HerglotzError::NonFiniteParameter);
        }
        if z.im == 0.0 && self.touches_support(z.re) {
            return Err(HerglotzError::BoundaryEvaluationRequired { lambda: z.re });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Boundary value F(λ+i0) in closed form; Im of the result is ≥ 0.
    ///
    /// Support endpoints and atom positions are the model's excluded set
    /// (the almost-everywhere exceptions); hitting one is an error, not a
    /// value.
    pub fn eval_boundary(&self, lambda: f64) -> Result<Complex64, HerglotzError> {
        if !lambda.is_finite() {
            return Err(HerglotzError::NonFiniteParameter);
        }
        match &self.kind {
            ScalarKind::Cauchy {
                center,
                scale,
                mass,
            } => Ok(mass / Complex64::new(center - lambda, -scale)),
            ScalarKind::Semicircle { halfwidth, mass } => {
                let tol = excluded_point_tol(*halfwidth);
                if (lambda.abs() - halfwidth).abs() <= tol {
                    return Err(HerglotzError::MeasureZeroPoint { lambda });
                }
                let zeta = 2.0 * lambda / halfwidth;
                let f2 = if lambda.abs() < *halfwidth {
                    // Inside the band: limit from above has the +i branch.
                    Complex64::new(-zeta, (4.0 - zeta * zeta).sqrt()) / 2.0
                } else {
                    semicircle_f2(Complex64::new(zeta, 0.0))
                };
                Ok(2.0 * mass / halfwidth * f2)
            }
            ScalarKind::Uniform { a, b, mass } => {
                if (lambda - a).abs() <= excluded_point_tol(*a)
                    || (lambda - b).abs() <= excluded_point_tol(*b)
                {
                    return Err(HerglotzError::MeasureZeroPoint { lambda });
                }
                let density = mass / (b - a);
                if lambda > *a && lambda < *b {
                    // Principal log plus the explicit +iπ of the limit from
                    // above; both log arguments are positive, so no branch
                    // ambiguity enters.
                    Ok(Complex64::new(
                        density * ((b - lambda) / (lambda - a)).ln(),
                        density * std::f64::consts::PI,
                    ))
                } else {
                    Ok(Complex64::new(
                        density * ((b - lambda) / (a - lambda)).ln(),
                        0.0,
                    ))
                }
            }
            ScalarKind::PointMasses { masses } => {
                let mut sum = 0.0;
                for &(position, weight) in masses {
                    if (lambda - position).abs() <= excluded_point_tol(position) {
                        return Err(HerglotzError::MeasureZeroPoint { lambda });
                    }
                    sum += weight / (position - lambda);
                }
                Ok(Complex64::new(sum, 0.0))
            }
            ScalarKind::Combination { terms } => {
                let mut sum = Complex64::new(0.0, 0.0);
                for (weight, member) in terms {
                    if *weight == 0.0 {
                        continue;
                    }
                    sum += *weight * member.eval_boundary(lambda)?;
                }
                Ok(sum)
            }
        }
    }

    /// Atom positions and support-interval endpoints: the real points where
    /// boundary evaluation is refused.
    pub fn excluded_points(&self) -> Vec<f64> {
        let mut points = Vec::new();
        self.collect_excluded(&mut points);
        points.sort_by(|x, y| x.partial_cmp(y).unwrap());
        points.dedup();
        points
    }

    fn collect_excluded(&self, out: &mut Vec<f64>) {
        match &self.kind {
            ScalarKind::Cauchy { .. } => {}
            ScalarKind::Semicircle { halfwidth, .. } => {
                out.push(-halfwidth);
                out.push(*halfwidth);
            }
            ScalarKind::Uniform { a, b, .. } => {
                out.push(*a);
                out.push(*b);
            }
            ScalarKind::PointMasses { masses } => {
                out.extend(masses.iter().map(|&(p, _)| p));
            }
            ScalarKind::Combination { terms } => {
                for (weight, member) in terms {
                    if *weight > 0.0 {
                        member.collect_excluded(out);
                    }
                }
            }
        }
    }

    /// Whether a real point lies in (or within rounding of) the closed
    /// support of μ.
    fn touches_support(&self, x: f64) -> bool {
        match &self.kind {
            ScalarKind::Cauchy { .. } => true,
            ScalarKind::Semicircle { halfwidth, .. } => {
                x.abs() <= halfwidth + excluded_point_tol(*halfwidth)
            }
            ScalarKind::Uniform { a, b, .. } => {
                x >= a - excluded_point_tol(*a) && x <= b + excluded_point_tol(*b)
            }
            ScalarKind::PointMasses { masses } => masses
                .iter()
                .any(|&(p, _)| (x - p).abs() <= excluded_point_tol(p)),
            ScalarKind::Combination { terms } => terms
                .iter()
                .any(|(w, m)| *w > 0.0 && m.touches_support(x)),
        }
    }

    /// Closed-form F(z); assumes the domain checks already passed.
    fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            ScalarKind::Cauchy {
                center,
                scale,
                mass,
            } => {
                // Pole of the transform sits at center ∓ i·scale, on the
                // opposite side of the axis from z.
                let side = if z.im >= 0.0 { -scale } else { *scale };
                mass / (Complex64::new(*center, side) - z)
            }
            ScalarKind::Semicircle { halfwidth, mass } => {
                2.0 * mass / halfwidth * semicircle_f2(2.0 * z / halfwidth)
            }
            ScalarKind::Uniform { a, b, mass } => {
                let ratio = (b - z) / (a - z);
                mass / (b - a) * ratio.ln()
            }
            ScalarKind::PointMasses { masses } => masses
                .iter()
                .map(|&(p, w)| w / (Complex64::new(p, 0.0) - z))
                .sum(),
            ScalarKind::Combination { terms } => terms
                .iter()
                .filter(|(w, _)| *w > 0.0)
                .map(|(w, m)| w * m.eval_unchecked(z))
                .sum(),
        }
    }
}

/// Stieltjes transform of the standard semicircle on [−2, 2]:
/// (−ζ + √(ζ²−4))/2 on the branch that decays at infinity.
///
/// Writing the root as √(ζ−2)·√(ζ+2) with principal square roots puts the
/// cut exactly on [−2, 2] and keeps the value conjugate-symmetric, so one
/// formula serves both half-planes and the real complement of the band.
fn semicircle_f2(zeta: Complex64) -> Complex64 {
    let root = (zeta - 2.0).sqrt() * (zeta + 2.0).sqrt();
    (root - zeta) / 2.0
}
