//! Built-in scenarios: a small fixed gallery covering every check and
//! skip path, plus seeded random families for wide sweeps.

use reslab_core::corpus::{matrix_corpus, scalar_corpus};
use reslab_core::herglotz::{MatrixHerglotzModel, ScalarHerglotzModel};
use reslab_core::numerics::CMatrix;

use crate::scenario::{BuiltModel, CheckKind, Scenario};

/// Checks a matrix family can run; the rank-one-only ones are left out
/// rather than producing a wall of skipped rows.
const MATRIX_CHECKS: [CheckKind; 4] = [
    CheckKind::Eq2,
    CheckKind::Ssf,
    CheckKind::ResonanceIndex,
    CheckKind::Herglotz,
];

fn scalar(model: ScalarHerglotzModel) -> BuiltModel {
    BuiltModel::Scalar(model)
}

fn real_matrix(rows: &[Vec<f64>]) -> CMatrix {
    CMatrix::from_real_rows(rows).expect("bundled coefficient")
}

/// The fixed gallery. Each scenario isolates one regime:
/// a plain pole family, a real crossing, an energy sweep inside a band,
/// coupled matrix terms, a sign-indefinite perturbation, and a measure
/// with an atom.
pub fn fixed_scenarios() -> Vec<Scenario> {
    let all = CheckKind::ALL.to_vec();

    let cauchy = Scenario::new(
        "cauchy-rank-one",
        scalar(ScalarHerglotzModel::cauchy(0.0, 1.0).expect("bundled model")),
        vec![0.0],
        (0.0, 1.0),
        all.clone(),
    );

    // The resonance point is real here (energy outside the support), so
    // the coupling interval contains a crossing: the Lorentzian checks
    // skip and the singular part carries the whole shift.
    let crossing = Scenario::new(
        "uniform-crossing",
        scalar(ScalarHerglotzModel::uniform(0.0, 1.0).expect("bundled model")),
        vec![2.0],
        (0.0, 2.0),
        all.clone(),
    );

    let band = Scenario::new(
        "semicircle-band",
        scalar(ScalarHerglotzModel::semicircle(2.0).expect("bundled model")),
        vec![-1.0, 0.5, 1.0],
        (-1.0, 1.0),
        all.clone(),
    );

    let mix = Scenario::new(
        "mix-matrix-2x2",
        BuiltModel::Matrix(
            MatrixHerglotzModel::new(
                vec![1, 1],
                vec![
                    (
                        real_matrix(&[vec![1.0, 0.3], vec![0.3, 0.5]]),
                        ScalarHerglotzModel::cauchy(0.0, 1.0).expect("bundled model"),
                    ),
                    (
                        real_matrix(&[vec![0.5, 0.0], vec![0.0, 1.0]]),
                        ScalarHerglotzModel::semicircle(2.0).expect("bundled model"),
                    ),
                ],
            )
            .expect("bundled model"),
        ),
        vec![0.0, 0.3, 0.8],
        (0.0, 2.0),
        all.clone(),
    );

    let signed = Scenario::new(
        "signature-mixed",
        BuiltModel::Matrix(
            MatrixHerglotzModel::new(
                vec![1, -1],
                vec![
                    (
                        real_matrix(&[vec![1.0, 0.0], vec![0.0, 0.0]]),
                        ScalarHerglotzModel::cauchy(0.0, 1.0).expect("bundled model"),
                    ),
                    (
                        real_matrix(&[vec![0.0, 0.0], vec![0.0, 1.0]]),
                        ScalarHerglotzModel::semicircle(2.0).expect("bundled model"),
                    ),
                ],
            )
            .expect("bundled model"),
        ),
        vec![0.0, 0.4],
        (-1.0, 1.0),
        all.clone(),
    );

    // The energy grid hits the atom at 0.5 on purpose: boundary data does
    // not exist there and every check must skip, not crash.
    let atoms = Scenario::new(
        "point-mass-atoms",
        scalar(
            ScalarHerglotzModel::combination(vec![
                (
                    1.0,
                    ScalarHerglotzModel::uniform(-1.0, 1.0).expect("bundled model"),
                ),
                (
                    1.0,
                    ScalarHerglotzModel::point_masses(vec![(0.5, 0.6)]).expect("bundled model"),
                ),
            ])
            .expect("bundled model"),
        ),
        vec![0.0, 0.5],
        (0.0, 1.0),
        all,
    );

    vec![cauchy, crossing, band, mix, signed, atoms]
}

/// Seeded random families: rank-one cases exercising every check and
/// finite-rank cases exercising the determinant-side checks.
pub fn corpus_scenarios(seed: u64) -> Vec<Scenario> {
    let mut scenarios = Vec::new();
    for case in scalar_corpus(seed, 20) {
        scenarios.push(Scenario::new(
            case.name,
            scalar(case.model),
            vec![case.lambda],
            case.interval,
            CheckKind::ALL.to_vec(),
        ));
    }
    for case in matrix_corpus(seed, 20) {
        scenarios.push(Scenario::new(
            case.name,
            BuiltModel::Matrix(case.model),
            case.lambdas,
            case.interval,
            MATRIX_CHECKS.to_vec(),
        ));
    }
    scenarios
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn fixed_gallery_has_unique_names_and_checks() {
        let scenarios = fixed_scenarios();
        assert_eq!(scenarios.len(), 6);
        let names: BTreeSet<_> = scenarios.iter().map(|s| s.name.clone()).collect();
        assert_eq!(names.len(), scenarios.len());
        for s in &scenarios {
            assert_eq!(s.checks.len(), CheckKind::ALL.len());
            assert!(!s.lambda_grid.is_empty());
        }
    }

    #[test]
    fn corpus_is_deterministic_in_the_seed() {
        let a = corpus_scenarios(7);
        let b = corpus_scenarios(7);
        assert_eq!(a.len(), 40);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.lambda_grid, y.lambda_grid);
            assert_eq!(x.interval, y.interval);
        }
        let other = corpus_scenarios(8);
        assert!(
            a.iter()
                .zip(&other)
                .any(|(x, y)| x.lambda_grid != y.lambda_grid),
            "different seeds should give different grids"
        );
    }
}
