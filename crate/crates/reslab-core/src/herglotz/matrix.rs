use num_complex::Complex64;

use super::{HerglotzError, ScalarHerglotzModel, MAX_MODEL_DIM};
use crate::numerics::{small_eigenvalues, CMatrix};

/// Slack for the Hermitian and positive-semidefinite validation of
/// coefficient matrices, relative to their magnitude.
const PSD_TOL: f64 = 1e-9;

/// Matrix-valued Herglotz data A(z) = J·Σ C_m·F_m(z): a diagonal ±1
/// signature J and positive-semidefinite Hermitian coefficients C_m paired
/// with scalar models F_m.
///
/// The signed sum is the object whose eigenvalues drive the resonance set;
/// the unsigned sum Σ C_m·F_m(z) is the part with the Herglotz property
/// (positive-semidefinite imaginary part above the real axis).
#[derive(Debug, Clone)]
pub struct MatrixHerglotzModel {
    signature: Vec<i8>,
    terms: Vec<(CMatrix, ScalarHerglotzModel)>,
}

impl MatrixHerglotzModel {
    pub fn new(
        signature: Vec<i8>,
        terms: Vec<(CMatrix, ScalarHerglotzModel)>,
    ) -> Result<Self, HerglotzError> {
        let dim = signature.len();
        if dim == 0 || dim > MAX_MODEL_DIM {
            return Err(HerglotzError::BadDimension {
                dim,
                max: MAX_MODEL_DIM,
            });
        }
        if signature.iter().any(|&j| j != 1 && j != -1) {
            return Err(HerglotzError::BadSignature);
        }
        for (index, (c, _)) in terms.iter().enumerate() {
            if c.dim() != dim {
                return Err(HerglotzError::WrongCoefficientShape {
                    index,
                    rows: c.dim(),
                    cols: c.dim(),
                    dim,
                });
            }
            let scale = 1.0 + c.max_abs();
            if !c.is_hermitian(PSD_TOL * scale) {
                return Err(HerglotzError::NotHermitian { index });
            }
            let eig = small_eigenvalues(c)?;
            let smallest = eig
                .values
                .iter()
                .map(|v| v.re)
                .fold(f64::INFINITY, f64::min);
            if smallest < -PSD_TOL * scale {
                return Err(HerglotzError::NotPositiveSemidefinite { index, smallest });
            }
        }
        Ok(Self { signature, terms })
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn terms(&self) -> &[(CMatrix, ScalarHerglotzModel)] {
        &self.terms
    }

    pub fn signature_matrix(&self) -> CMatrix {
        CMatrix::diagonal(
            &self
                .signature
                .iter()
                .map(|&j| Complex64::new(f64::from(j), 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// Unsigned sum Σ C_m·F_m(z); this is the Herglotz part.
    pub fn eval_sum(&self, z: Complex64) -> Result<CMatrix, HerglotzError> {
        let mut sum = CMatrix::zeros(self.dim());
        for (c, model) in &self.terms {
            sum = sum.add(&c.scaled(model.eval(z)?));
        }
        Ok(sum)
    }

    /// A(z) = J·Σ C_m·F_m(z) for z off the real axis (or real and
    /// admissible for every term).
    pub fn eval(&self, z: Complex64) -> Result<CMatrix, HerglotzError> {
        Ok(self.signature_matrix().mul(&self.eval_sum(z)?))
    }

    /// Unsigned boundary sum Σ C_m·F_m(λ+i0).
    pub fn eval_sum_boundary(&self, lambda: f64) -> Result<CMatrix, HerglotzError> {
        let mut sum = CMatrix::zeros(self.dim());
        for (c, model) in &self.terms {
            sum = sum.add(&c.scaled(model.eval_boundary(lambda)?));
        }
        Ok(sum)
    }

    /// A(λ+i0) = J·Σ C_m·F_m(λ+i0).
    pub fn eval_boundary(&self, lambda: f64) -> Result<CMatrix, HerglotzError> {
        Ok(self.signature_matrix().mul(&self.eval_sum_boundary(lambda)?))
    }

    /// Union of the terms' excluded real points.
    pub fn excluded_points(&self) -> Vec<f64> {
        let mut points: Vec<f64> = self
            .terms
            .iter()
            .flat_map(|(_, m)| m.excluded_points())
            .collect();
        points.sort_by(|x, y| x.partial_cmp(y).unwrap());
        points.dedup();
        points
    }

    /// Wraps a scalar model as the 1×1 matrix model with signature [+1].
    pub fn from_scalar(model: ScalarHerglotzModel) -> Self {
        Self {
            signature: vec![1],
            terms: vec![(CMatrix::identity(1), model)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag_terms() -> Vec<(CMatrix, ScalarHerglotzModel)> {
        vec![
            (
                CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap(),
                ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap(),
            ),
            (
                CMatrix::from_real_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap(),
                ScalarHerglotzModel::semicircle(2.0).unwrap(),
            ),
        ]
    }

    #[test]
    fn scalar_reduction() {
        let m = MatrixHerglotzModel::from_scalar(ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap());
        let a = m.eval_boundary(0.0).unwrap();
        assert_eq!(a.dim(), 1);
        assert!((a[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn componentwise_boundary_values() {
        let m = MatrixHerglotzModel::new(vec![1, 1], diag_terms()).unwrap();
        let a = m.eval_boundary(0.0).unwrap();
        assert!((a[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((a[(1, 1)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!(a[(0, 1)].norm() < 1e-15 && a[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn signature_flips_rows() {
        let m = MatrixHerglotzModel::new(vec![1, -1], diag_terms()).unwrap();
        let a = m.eval_boundary(0.0).unwrap();
        assert!((a[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((a[(1, 1)] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn unsigned_imaginary_part_is_psd() {
        let coupled = CMatrix::from_real_rows(&[vec![1.0, 0.3], vec![0.3, 0.5]]).unwrap();
        let second = CMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 1.0]]).unwrap();
        let m = MatrixHerglotzModel::new(
            vec![1, -1],
            vec![
                (coupled, ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap()),
                (second, ScalarHerglotzModel::semicircle(2.0).unwrap()),
            ],
        )
        .unwrap();
        for &z in &[c(0.0, 0.5), c(1.2, 0.01), c(-0.7, 2.0)] {
            let herglotz_part = m.eval_sum(z).unwrap().imaginary_part();
            let eig = small_eigenvalues(&herglotz_part).unwrap();
            for v in &eig.values {
                assert!(v.re >= -1e-10, "Im-part eigenvalue {v} at z = {z}");
            }
        }
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        let cau = ScalarHerglotzModel::cauchy(0.0, 1.0).unwrap();
        assert!(matches!(
            MatrixHerglotzModel::new(vec![2], vec![(CMatrix::identity(1), cau.clone())]),
            Err(HerglotzError::BadSignature)
        ));
        assert!(matches!(
            MatrixHerglotzModel::new(vec![], vec![]),
            Err(HerglotzError::BadDimension { .. })
        ));
        let indefinite = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(
            MatrixHerglotzModel::new(vec![1, 1], vec![(indefinite, cau.clone())]),
            Err(HerglotzError::NotPositiveSemidefinite { .. })
        ));
        let skew = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            MatrixHerglotzModel::new(vec![1, 1], vec![(skew, cau.clone())]),
            Err(HerglotzError::NotHermitian { .. })
        ));
        let wrong_shape = CMatrix::identity(3);
        assert!(matches!(
            MatrixHerglotzModel::new(vec![1, 1], vec![(wrong_shape, cau)]),
            Err(HerglotzError::WrongCoefficientShape { .. })
        ));
    }

    #[test]
    fn excluded_points_union() {
        let m = MatrixHerglotzModel::new(vec![1, 1], diag_terms()).unwrap();
        assert_eq!(m.excluded_points(), vec![-2.0, 2.0]);
    }
}
