use num_complex::Complex64;

use super::NumericsError;

const MAX_ITERATIONS: usize = 1000;
const STEP_TOL: f64 = 1e-14;

/// Polynomial with complex coefficients, ascending degree.
///
/// Trailing (highest-order) zero coefficients are trimmed on construction,
/// so the leading coefficient is always nonzero and `degree() >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self, NumericsError> {
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(NumericsError::NonFiniteInput);
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(NumericsError::DegreeTooLow);
        }
        Ok(Self { coeffs })
    }

    /// Expands `leading * prod (s - root_j)` into coefficient form.
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Result<Self, NumericsError> {
        let mut coeffs = vec![leading];
        for &root in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for i in (0..coeffs.len() - 1).rev() {
                let current = coeffs[i];
                coeffs[i + 1] += current;
                coeffs[i] = current * (-root);
            }
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Complex64 {
        *self.coeffs.last().expect("polynomial is never empty")
    }

    /// Horner evaluation.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Horner evaluation of the derivative.
    pub fn eval_derivative(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * s + c * (k as f64);
        }
        acc
    }

    /// Same polynomial divided by its leading coefficient.
    fn monic_coefficients(&self) -> Vec<Complex64> {
        let lead = self.leading_coefficient();
        self.coeffs.iter().map(|&c| c / lead).collect()
    }
}

/// All roots of `p`, with multiplicity, via simultaneous Weierstrass
/// (Durand-Kerner) iteration on the monic polynomial.
///
/// Initial guesses sit on a circle of radius `1 + max|coeff|` at equal
/// angles with a fixed irrational offset, which breaks the real-axis
/// symmetry that can stall the iteration. The schedule is fixed, so the
/// output is deterministic.
pub fn poly_roots(p: &ComplexPolynomial) -> Result<Vec<Complex64>, NumericsError> {
    let monic = p.monic_coefficients();
    let degree = monic.len() - 1;

    if degree == 1 {
        return Ok(vec![-monic[0]]);
    }

    let radius = 1.0
        + monic[..degree]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let offset = std::f64::consts::FRAC_1_SQRT_2;
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + offset;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let eval_monic = |s: Complex64| -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &c in monic[..degree].iter().rev() {
            acc = acc * s + c;
        }
        acc
    };

    let mut corrections = vec![Complex64::new(0.0, 0.0); degree];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge apart deterministically.
                denom = Complex64::new(1e-12 * radius.max(1.0), 0.0);
            }
            corrections[i] = eval_monic(roots[i]) / denom;
        }
        let mut worst = 0.0_f64;
        for i in 0..degree {
            roots[i] -= corrections[i];
            let rel = corrections[i].norm() / (1.0 + roots[i].norm());
            worst = worst.max(rel);
        }
        if worst <= STEP_TOL {
            return Ok(roots);
        }
    }

    let residual = roots
        .iter()
        .map(|&r| eval_monic(r).norm())
        .fold(0.0, f64::max);
    // Linear convergence on root clusters can leave the last correction just
    // above the step tolerance while the roots are already accurate.
    if residual <= 1e-10 * radius.powi(degree as i32) {
        return Ok(roots);
    }
    Err(NumericsError::RootsDidNotConverge {
        iterations: MAX_ITERATIONS,
        best: roots,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut roots: Vec<Complex64>) -> Vec<Complex64> {
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        roots
    }

    #[test]
    fn square_plus_one() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let roots = sorted(poly_roots(&p).unwrap());
        assert!((roots[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn linear_case() {
        let p = ComplexPolynomial::new(vec![c(-3.0, 0.0), c(1.0, 0.0)]).unwrap();
        let roots = poly_roots(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn quadratic_with_complex_pair() {
        // s^2 - 2s + 5 = (s - (1+2i))(s - (1-2i))
        let p = ComplexPolynomial::new(vec![c(5.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let roots = sorted(poly_roots(&p).unwrap());
        assert!((roots[0] - c(1.0, -2.0)).norm() < 1e-12);
        assert!((roots[1] - c(1.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn double_root_converges() {
        // (s - 0.5)^2 = s^2 - s + 0.25
        let p = ComplexPolynomial::new(vec![c(0.25, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let roots = poly_roots(&p).unwrap();
        for r in roots {
            assert!((r - c(0.5, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = ComplexPolynomial::new(vec![
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn constant_polynomial_is_rejected() {
        assert!(matches!(
            ComplexPolynomial::new(vec![c(4.0, 0.0)]),
            Err(NumericsError::DegreeTooLow)
        ));
    }

    #[test]
    fn from_roots_expands_correctly() {
        let p = ComplexPolynomial::from_roots(c(2.0, 0.0), &[c(1.0, 0.0), c(-3.0, 0.0)]).unwrap();
        // 2(s-1)(s+3) = 2s^2 + 4s - 6
        let coeffs = p.coefficients();
        assert!((coeffs[0] - c(-6.0, 0.0)).norm() < 1e-14);
        assert!((coeffs[1] - c(4.0, 0.0)).norm() < 1e-14);
        assert!((coeffs[2] - c(2.0, 0.0)).norm() < 1e-14);
    }
}
