use num_complex::Complex64;

use super::NumericsError;

/// Small dense complex matrix, row major.
///
/// Sized for the operator-valued boundary data that drives the finite-rank
/// computations (k <= 16); not a general linear-algebra type.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from row-major data; `data.len()` must equal `n*n`.
    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Result<Self, NumericsError> {
        if data.len() != n * n {
            return Err(NumericsError::NotSquare {
                rows: data.len() / n.max(1),
                cols: n,
            });
        }
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(NumericsError::NonFiniteInput);
        }
        Ok(Self { n, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, NumericsError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(NumericsError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_rows(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self[(i, l)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    /// Hermitian part of the skew decomposition: (M - M*) / 2i.
    pub fn imaginary_part(&self) -> Self {
        let half_over_i = Complex64::new(0.0, -0.5);
        self.sub(&self.adjoint()).scaled(half_over_i)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.adjoint()).max_abs() <= tol
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = a[col * n + col].norm();
            for row in (col + 1)..n {
                let mag = a[row * n + col].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_mag == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col];
            det *= pivot;
            for row in (col + 1)..n {
                let factor = a[row * n + col] / pivot;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= factor * v;
                }
            }
        }
        det
    }

    /// Coefficients of det(s*I - M), ascending in s, monic.
    ///
    /// Faddeev-LeVerrier recursion; exact in rational arithmetic, stable
    /// enough in f64 for the k <= 16 contract when roots get one Newton
    /// polish afterwards.
    pub fn characteristic_polynomial(&self) -> super::ComplexPolynomial {
        let n = self.n;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        let mut m = Self::zeros(n);
        for step in 1..=n {
            // M_k = A * (M_{k-1} + c_{n-k+1} * I)
            let mut shifted = m.clone();
            for i in 0..n {
                shifted[(i, i)] += coeffs[n - step + 1];
            }
            m = self.mul(&shifted);
            coeffs[n - step] = -m.trace() / (step as f64);
        }
        super::ComplexPolynomial::new(coeffs)
            .expect("characteristic polynomial of a square matrix is monic")
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_of_identity_and_swap() {
        assert_eq!(CMatrix::identity(3).det(), c(1.0, 0.0));
        let m = CMatrix::from_rows(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert_eq!(m.det(), c(-1.0, 0.0));
    }

    #[test]
    fn det_matches_cofactor_expansion_2x2() {
        let m =
            CMatrix::from_rows(2, vec![c(1.0, 2.0), c(0.5, -1.0), c(2.0, 0.0), c(3.0, 1.0)])
                .unwrap();
        let expected = c(1.0, 2.0) * c(3.0, 1.0) - c(0.5, -1.0) * c(2.0, 0.0);
        assert!((m.det() - expected).norm() < 1e-14);
    }

    #[test]
    fn charpoly_of_companion_like_matrix() {
        // [[0,1],[0,0]] has char poly s^2
        let m = CMatrix::from_rows(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let p = m.characteristic_polynomial();
        assert_eq!(p.degree(), 2);
        assert!(p.coefficients()[0].norm() < 1e-15);
        assert!(p.coefficients()[1].norm() < 1e-15);
        assert!((p.coefficients()[2] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn imaginary_part_is_hermitian() {
        let m = CMatrix::from_rows(
            2,
            vec![c(1.0, 2.0), c(0.5, -1.0), c(2.0, 0.3), c(3.0, 1.0)],
        )
        .unwrap();
        let im = m.imaginary_part();
        assert!(im.is_hermitian(1e-15));
    }
}
