//! Seeded random model corpus for sweep verification.
//!
//! Every case is produced from one ChaCha stream, so a fixed seed yields a
//! byte-for-byte reproducible corpus. Rejection sampling keeps the cases
//! numerically comfortable: rank-one cases provide a resonance point with
//! Im r bounded away from 0, and matrix cases keep real resonance points
//! away from the coupling interval and complex ones away from the real
//! axis.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::finite_rank::resonance_set;
use crate::herglotz::{MatrixHerglotzModel, ScalarHerglotzModel};
use crate::numerics::CMatrix;
use crate::rank_one::resonance_point;

/// Smallest |Im r| accepted for a rank-one corpus case; keeps
/// finite-difference derivative errors (O(h²/β³)) and continuation-circle
/// moduli (O(β/radius)) comfortably inside the acceptance tolerances.
const MIN_SCALAR_BETA: f64 = 0.25;
/// Complex resonance points of matrix cases stay at least this far from
/// the real axis.
const MIN_MATRIX_BETA: f64 = 1e-3;
/// Real resonance points of matrix cases stay at least this far outside
/// the coupling interval.
const INTERVAL_MARGIN: f64 = 0.05;
/// Admissible energies keep this distance from every excluded real point.
const LAMBDA_MARGIN: f64 = 0.05;

/// One rank-one verification case: a scalar model with an energy where the
/// resonance point is properly complex, plus a coupling and an interval
/// for the derivative-law and phase-range checks.
#[derive(Debug, Clone)]
pub struct ScalarCase {
    pub name: String,
    pub model: ScalarHerglotzModel,
    pub lambda: f64,
    /// Random coupling for derivative-law triples.
    pub coupling: f64,
    /// Coupling interval for phase-range and sum-rule checks.
    pub interval: (f64, f64),
}

/// One finite-rank verification case: a matrix model with a 5-point energy
/// grid and a coupling interval free of real resonance points.
#[derive(Debug, Clone)]
pub struct MatrixCase {
    pub name: String,
    pub model: MatrixHerglotzModel,
    pub lambdas: Vec<f64>,
    pub interval: (f64, f64),
}

fn random_scalar_model(rng: &mut ChaCha8Rng) -> ScalarHerglotzModel {
    match rng.gen_range(0u8..4) {
        0 => {
            let center = rng.gen_range(-1.0..1.0);
            let scale = rng.gen_range(0.5..1.5);
            let mass = rng.gen_range(0.6..1.6);
            ScalarHerglotzModel::cauchy_with_mass(center, scale, mass).unwrap()
        }
        1 => {
            let halfwidth = rng.gen_range(1.2..2.6);
            let mass = rng.gen_range(0.8..1.8);
            ScalarHerglotzModel::semicircle_with_mass(halfwidth, mass).unwrap()
        }
        2 => {
            let a = rng.gen_range(-2.0..0.5);
            let b = a + rng.gen_range(1.0..2.5);
            let mass = rng.gen_range(0.8..2.0);
            ScalarHerglotzModel::uniform_with_mass(a, b, mass).unwrap()
        }
        _ => {
            // Uniform background plus a couple of atoms: an absolutely
            // continuous layer with a singular admixture.
            let a = rng.gen_range(-2.0..0.0);
            let b = a + rng.gen_range(1.5..3.0);
            let background = ScalarHerglotzModel::uniform_with_mass(a, b, 1.0).unwrap();
            let atoms: Vec<(f64, f64)> = (0..rng.gen_range(1usize..3))
                .map(|_| (rng.gen_range(-2.5..2.5), rng.gen_range(0.2..0.8)))
                .collect();
            let masses = ScalarHerglotzModel::point_masses(atoms).unwrap();
            ScalarHerglotzModel::combination(vec![
                (rng.gen_range(0.5..1.5), background),
                (rng.gen_range(0.5..1.5), masses),
            ])
            .unwrap()
        }
    }
}

/// An energy inside the model's absolutely continuous layer, away from
/// excluded points.
fn admissible_lambda(rng: &mut ChaCha8Rng, model: &ScalarHerglotzModel) -> Option<f64> {
    let excluded = model.excluded_points();
    for _ in 0..64 {
        let lambda = rng.gen_range(-2.0..2.0);
        if excluded.iter().any(|&p| (lambda - p).abs() < LAMBDA_MARGIN) {
            continue;
        }
        return Some(lambda);
    }
    None
}

/// Deterministic corpus of `count` rank-one cases; every case has a
/// resonance point with Im r ≥ 0.25 at its energy.
pub fn scalar_corpus(seed: u64, count: usize) -> Vec<ScalarCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    let mut attempt = 0usize;
    while cases.len() < count {
        attempt += 1;
        let model = random_scalar_model(&mut rng);
        let Some(lambda) = admissible_lambda(&mut rng, &model) else {
            continue;
        };
        let Ok(point) = resonance_point(&model, lambda) else {
            continue;
        };
        if point.beta() < MIN_SCALAR_BETA {
            continue;
        }
        let coupling = rng.gen_range(-2.0..2.0);
        let a: f64 = rng.gen_range(-3.0..2.0);
        let b = (a + rng.gen_range(0.5..3.0)).min(3.0);
        cases.push(ScalarCase {
            name: format!("scalar-{:03}", attempt),
            model,
            lambda,
            coupling,
            interval: (a, b),
        });
    }
    cases
}

/// Random PSD coupling matrix C = G·G† with entries of unit scale.
fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let data: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = CMatrix::from_rows(dim, data).unwrap();
    g.mul(&g.adjoint())
}

fn random_signature(rng: &mut ChaCha8Rng, dim: usize, mixed: bool) -> Vec<i8> {
    if !mixed {
        return vec![1; dim];
    }
    let mut signature: Vec<i8> = (0..dim)
        .map(|_| if rng.gen_range(0u8..2) == 0 { 1 } else { -1 })
        .collect();
    // Force at least one negative entry so the case is genuinely mixed.
    if signature.iter().all(|&j| j == 1) {
        signature[rng.gen_range(0..dim)] = -1;
    }
    signature
}

fn candidate_matrix_model(rng: &mut ChaCha8Rng, dim: usize, mixed: bool) -> MatrixHerglotzModel {
    let signature = random_signature(rng, dim, mixed);
    let n_terms = rng.gen_range(1usize..3);
    let terms = (0..n_terms)
        .map(|_| (random_psd(rng, dim), random_scalar_model(rng)))
        .collect();
    MatrixHerglotzModel::new(signature, terms).unwrap()
}

/// Whether every resonance point at this energy stays clear of the
/// interval (real points) and of the real axis (complex points).
fn lambda_is_comfortable(model: &MatrixHerglotzModel, lambda: f64, interval: (f64, f64)) -> bool {
    let Ok(set) = resonance_set(model, lambda) else {
        return false;
    };
    set.points().iter().all(|p| {
        if p.is_real() {
            p.alpha() < interval.0 - INTERVAL_MARGIN || p.alpha() > interval.1 + INTERVAL_MARGIN
        } else {
            p.beta().abs() >= MIN_MATRIX_BETA
        }
    })
}

/// Deterministic corpus of `count` finite-rank cases with k ∈ {1,2,3},
/// both definite and mixed signatures, 5-point energy grids, and coupling
/// intervals inside [−3, 3].
pub fn matrix_corpus(seed: u64, count: usize) -> Vec<MatrixCase> {
    // Offset the stream so scalar and matrix corpora built from the same
    // seed do not share their prefix.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut cases = Vec::with_capacity(count);
    let mut attempt = 0usize;
    'outer: while cases.len() < count {
        attempt += 1;
        let index = cases.len();
        let dim = 1 + index % 3;
        let mixed = index % 2 == 1;
        let model = candidate_matrix_model(&mut rng, dim, mixed);

        let excluded = model.excluded_points();
        let a: f64 = rng.gen_range(-3.0..2.0);
        let b = (a + rng.gen_range(0.5..3.0)).min(3.0);
        let interval = (a, b);

        let mut lambdas = Vec::with_capacity(5);
        let mut tries = 0;
        while lambdas.len() < 5 {
            tries += 1;
            if tries > 200 {
                continue 'outer;
            }
            let lambda: f64 = rng.gen_range(-2.0..2.0);
            if excluded.iter().any(|&p| (lambda - p).abs() < LAMBDA_MARGIN) {
                continue;
            }
            if lambdas.iter().any(|&l: &f64| (lambda - l).abs() < 1e-3) {
                continue;
            }
            if !lambda_is_comfortable(&model, lambda, interval) {
                continue;
            }
            lambdas.push(lambda);
        }
        lambdas.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cases.push(MatrixCase {
            name: format!("matrix-{:03}-k{}", attempt, dim),
            model,
            lambdas,
            interval,
        });
    }
    cases
}
