use num_complex::Complex64;

use super::matrix::CMatrix;
use super::poly::poly_roots;
use super::NumericsError;

/// Largest matrix dimension accepted by [`small_eigenvalues`]. The
/// characteristic-polynomial route loses accuracy quickly beyond this.
pub const MAX_EIG_DIM: usize = 16;

/// Relative gap below which two eigenvalue iterates are treated as one
/// eigenvalue with higher multiplicity.
const CLUSTER_RTOL: f64 = 1e-7;

/// Eigenvalues of a small matrix, grouped by numerical coincidence.
#[derive(Debug, Clone)]
pub struct Eigenvalues {
    /// All eigenvalues, one entry per algebraic multiplicity, in the
    /// deterministic order produced by clustering.
    pub values: Vec<Complex64>,
    /// Clusters as `(representative, multiplicity)`. Representatives are the
    /// mean of each cluster; multiplicities sum to the dimension.
    pub clustered: Vec<(Complex64, usize)>,
}

/// Eigenvalues of `m` via its characteristic polynomial.
///
/// Intended for matrices up to [`MAX_EIG_DIM`]; larger inputs are rejected.
/// Each root gets one Newton step against the characteristic polynomial,
/// kept only when it reduces the residual, then nearby roots are merged
/// into multiplicity clusters.
pub fn small_eigenvalues(m: &CMatrix) -> Result<Eigenvalues, NumericsError> {
    let n = m.dim();
    if n > MAX_EIG_DIM {
        return Err(NumericsError::DimensionTooLarge {
            dim: n,
            max: MAX_EIG_DIM,
        });
    }

    let charpoly = m.characteristic_polynomial();
    let mut roots = poly_roots(&charpoly)?;

    for root in roots.iter_mut() {
        let p = charpoly.eval(*root);
        let dp = charpoly.eval_derivative(*root);
        if dp.norm() == 0.0 {
            continue;
        }
        let refined = *root - p / dp;
        if charpoly.eval(refined).norm() < p.norm() {
            *root = refined;
        }
    }

    let clustered = cluster(&roots);
    let mut values = Vec::with_capacity(n);
    for &(value, count) in &clustered {
        for _ in 0..count {
            values.push(value);
        }
    }
    Ok(Eigenvalues { values, clustered })
}

/// Greedy merge of roots whose pairwise distance is below the relative
/// cluster tolerance. Order is fixed by sorting first, so the result does
/// not depend on the iteration order of the root finder.
fn cluster(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut sorted: Vec<Complex64> = roots.to_vec();
    sorted.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });

    let scale = 1.0 + sorted.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let tol = CLUSTER_RTOL * scale;

    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut members: Vec<Vec<Complex64>> = Vec::new();
    for &root in &sorted {
        let mut placed = false;
        for (idx, (rep, count)) in clusters.iter_mut().enumerate() {
            if (root - *rep).norm() <= tol {
                members[idx].push(root);
                *count += 1;
                let sum: Complex64 = members[idx].iter().sum();
                *rep = sum / (members[idx].len() as f64);
                placed = true;
                break;
            }
        }
        if !placed {
            clusters.push((root, 1));
            members.push(vec![root]);
        }
    }
    clusters
}
