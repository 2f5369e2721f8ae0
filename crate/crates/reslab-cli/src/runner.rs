//! Executes scenario checks and collects report rows.
//!
//! Every (check, energy) pair becomes exactly one row. Engine errors never
//! abort a sweep: they become skipped rows with a machine-readable reason.
//! Rows may be computed in parallel; the output order is canonical
//! (scenario, check, energy ascending) regardless of scheduling.

use num_complex::Complex64;
use rayon::prelude::*;

use reslab_core::finite_rank::{
    self, det_phase_sum, det_phase_sum_at, lorentzian_sum_integral, resonance_set, FiniteRankError,
};
use reslab_core::herglotz::{herglotz_selfcheck, HerglotzError, MatrixHerglotzModel, ScalarHerglotzModel};
use reslab_core::rank_one::{
    breit_wigner_check, continuation_pole_check, phase_change, phase_derivative, resonance_point,
    ssf_ac, total_phase_variation, trace_identity_check, RankOneError,
};

use crate::report::{CheckRow, SkipReason};
use crate::scenario::{CheckKind, Scenario};

/// Finite-difference step shared by the derivative checks.
const FD_STEP: f64 = 1e-4;
/// Half-range standing in for ±∞ in the total-variation check.
const VARIATION_RANGE: f64 = 1e6;
/// Height of the smoothed determinant winding in the index cross-check.
const INDEX_HEIGHT: f64 = 1e-4;

fn skip_of_herglotz(e: &HerglotzError) -> SkipReason {
    match e {
        HerglotzError::MeasureZeroPoint { .. }
        | HerglotzError::BoundaryEvaluationRequired { .. } => SkipReason::MeasureZeroPoint,
        _ => SkipReason::NumericError,
    }
}

fn skip_of_rank_one(e: &RankOneError) -> SkipReason {
    match e {
        RankOneError::SplitRequired { .. }
        | RankOneError::AtRealResonance { .. }
        | RankOneError::NotApplicable { .. }
        | RankOneError::DerivativeSingularity { .. } => SkipReason::RealResonance,
        RankOneError::Model(inner) => skip_of_herglotz(inner),
        _ => SkipReason::NumericError,
    }
}

fn skip_of_finite_rank(e: &FiniteRankError) -> SkipReason {
    match e {
        FiniteRankError::SplitRequired { .. }
        | FiniteRankError::EndpointResonance { .. }
        | FiniteRankError::DeterminantVanished { .. } => SkipReason::RealResonance,
        FiniteRankError::NotAResonance { .. } => SkipReason::NoRealResonance,
        FiniteRankError::Model(inner) => skip_of_herglotz(inner),
        _ => SkipReason::NumericError,
    }
}

fn point_locus(value: Complex64) -> String {
    // +0.0 flushes negative zero so equal points render equally.
    format!("{:.6}{:+.6}i", value.re + 0.0, value.im + 0.0)
}

fn range_locus(a: f64, b: f64) -> String {
    format!("{a:.6}..{b:.6}")
}

/// (measured, expected, locus) or a reason to skip.
type Judged = Result<(f64, f64, String), SkipReason>;

fn check_eq1(model: &ScalarHerglotzModel, lambda: f64) -> Judged {
    let check = breit_wigner_check(model, lambda, FD_STEP).map_err(|e| skip_of_rank_one(&e))?;
    let point = resonance_point(model, lambda).map_err(|e| skip_of_rank_one(&e))?;
    Ok((
        check.finite_difference,
        check.target,
        point_locus(point.value()),
    ))
}

fn check_lorentzian(model: &ScalarHerglotzModel, lambda: f64, interval: (f64, f64)) -> Judged {
    let r0 = 0.5 * (interval.0 + interval.1);
    let point = resonance_point(model, lambda).map_err(|e| skip_of_rank_one(&e))?;
    let expected = phase_derivative(&point, r0).map_err(|e| skip_of_rank_one(&e))?;
    let change = phase_change(model, lambda, r0 - FD_STEP, r0 + FD_STEP)
        .map_err(|e| skip_of_rank_one(&e))?;
    Ok((change / (2.0 * FD_STEP), expected, format!("{r0:.6}")))
}

fn check_trace_identity(model: &ScalarHerglotzModel, lambda: f64, interval: (f64, f64)) -> Judged {
    let r0 = 0.5 * (interval.0 + interval.1);
    let residual = trace_identity_check(model, lambda, r0).map_err(|e| skip_of_rank_one(&e))?;
    Ok((residual, 0.0, format!("{r0:.6}")))
}

fn check_total_variation(model: &ScalarHerglotzModel, lambda: f64) -> Judged {
    let expected = total_phase_variation(model, lambda).map_err(|e| skip_of_rank_one(&e))?;
    let shift = ssf_ac(model, lambda, -VARIATION_RANGE, VARIATION_RANGE)
        .map_err(|e| skip_of_rank_one(&e))?;
    let measured = -2.0 * std::f64::consts::PI * shift;
    let point = resonance_point(model, lambda).map_err(|e| skip_of_rank_one(&e))?;
    Ok((measured, expected, point_locus(point.value())))
}

fn check_continuation(model: &ScalarHerglotzModel, lambda: f64) -> Judged {
    let report = continuation_pole_check(model, lambda).map_err(|e| skip_of_rank_one(&e))?;
    let point = resonance_point(model, lambda).map_err(|e| skip_of_rank_one(&e))?;
    let measured = if report.passed() { 1.0 } else { 0.0 };
    Ok((measured, 1.0, point_locus(point.value())))
}

fn check_eq2(model: &MatrixHerglotzModel, lambda: f64, interval: (f64, f64)) -> Judged {
    let (a, b) = interval;
    let measured = det_phase_sum(model, lambda, a, b).map_err(|e| skip_of_finite_rank(&e))?;
    let set = resonance_set(model, lambda).map_err(|e| skip_of_finite_rank(&e))?;
    let expected = lorentzian_sum_integral(&set, a, b);
    Ok((measured, expected, range_locus(a, b)))
}

fn check_ssf(model: &MatrixHerglotzModel, lambda: f64, interval: (f64, f64)) -> Judged {
    let (a, b) = interval;
    let whole = finite_rank::ssf_total(model, lambda, a, b).map_err(|e| skip_of_finite_rank(&e))?;
    // Additivity cross-check: split at an interior point, nudging it off
    // any real resonance.
    let width = b - a;
    let mut mid = 0.5 * (a + b);
    let mut parts = None;
    for attempt in 0..3 {
        match (
            finite_rank::ssf_total(model, lambda, a, mid),
            finite_rank::ssf_total(model, lambda, mid, b),
        ) {
            (Ok(left), Ok(right)) => {
                parts = Some(left.xi_total + right.xi_total);
                break;
            }
            (Err(FiniteRankError::EndpointResonance { .. }), _)
            | (_, Err(FiniteRankError::EndpointResonance { .. })) => {
                mid = 0.5 * (a + b) + width * 0.0137 * f64::from(attempt + 1);
            }
            (Err(e), _) | (_, Err(e)) => return Err(skip_of_finite_rank(&e)),
        }
    }
    let Some(parts) = parts else {
        return Err(SkipReason::RealResonance);
    };
    Ok((whole.xi_total, parts, range_locus(a, b)))
}

fn check_resonance_index(model: &MatrixHerglotzModel, lambda: f64, interval: (f64, f64)) -> Judged {
    let (a, b) = interval;
    let set = resonance_set(model, lambda).map_err(|e| skip_of_finite_rank(&e))?;
    let insiders: Vec<f64> = set
        .real_points()
        .filter(|p| p.alpha() > a && p.alpha() < b)
        .map(|p| p.alpha())
        .collect();
    if insiders.is_empty() {
        return Err(SkipReason::NoRealResonance);
    }
    let mut index_sum = 0i64;
    for &alpha in &insiders {
        index_sum += finite_rank::resonance_index(model, lambda, alpha)
            .map_err(|e| skip_of_finite_rank(&e))?;
    }
    // Independent path: the winding of det(1 + sA) just above the real
    // axis carries the total shift; subtracting the absolutely continuous
    // part leaves the sum of indices.
    let smoothed = det_phase_sum_at(model, Complex64::new(lambda, INDEX_HEIGHT), a, b)
        .map_err(|e| skip_of_finite_rank(&e))?;
    let xi_total_smoothed = -smoothed / (2.0 * std::f64::consts::PI);
    let xi_ac = -lorentzian_sum_integral(&set, a, b) / (2.0 * std::f64::consts::PI);
    let expected = xi_total_smoothed - xi_ac;
    let locus = insiders
        .iter()
        .map(|alpha| format!("{alpha:.6}"))
        .collect::<Vec<_>>()
        .join(";");
    Ok((index_sum as f64, expected, locus))
}

fn check_herglotz(scenario: &Scenario, lambda: f64) -> Judged {
    let samples = [
        Complex64::new(lambda, 0.35),
        Complex64::new(lambda, 1.7),
        Complex64::new(0.3, 0.9),
    ];
    let mut worst: f64 = 0.0;
    for factor in scenario.model.scalar_factors() {
        let report =
            herglotz_selfcheck(factor, &samples).map_err(|e| skip_of_herglotz(&e))?;
        worst = worst.max(report.worst_ratio());
    }
    Ok((worst, 0.0, range_locus(0.35, 1.7)))
}

fn run_one(scenario: &Scenario, check: CheckKind, lambda: f64) -> CheckRow {
    let judged: Judged = match check {
        CheckKind::Eq1
        | CheckKind::Lorentzian
        | CheckKind::TraceIdentity
        | CheckKind::TotalVariation
        | CheckKind::Continuation => match scenario.model.as_scalar() {
            None => Err(SkipReason::RankOneOnly),
            Some(model) => match check {
                CheckKind::Eq1 => check_eq1(model, lambda),
                CheckKind::Lorentzian => check_lorentzian(model, lambda, scenario.interval),
                CheckKind::TraceIdentity => {
                    check_trace_identity(model, lambda, scenario.interval)
                }
                CheckKind::TotalVariation => check_total_variation(model, lambda),
                CheckKind::Continuation => check_continuation(model, lambda),
                _ => unreachable!(),
            },
        },
        CheckKind::Eq2 => check_eq2(&scenario.model.to_matrix(), lambda, scenario.interval),
        CheckKind::Ssf => check_ssf(&scenario.model.to_matrix(), lambda, scenario.interval),
        CheckKind::ResonanceIndex => {
            check_resonance_index(&scenario.model.to_matrix(), lambda, scenario.interval)
        }
        CheckKind::Herglotz => check_herglotz(scenario, lambda),
    };
    match judged {
        Ok((measured, expected, locus)) => CheckRow::judged(
            &scenario.name,
            check.name(),
            lambda,
            locus,
            measured,
            expected,
            scenario.tolerance(check),
        ),
        Err(reason) => CheckRow::skipped(&scenario.name, check.name(), lambda, reason),
    }
}

/// Runs every (check, energy) pair of every scenario, optionally on a
/// fixed-size thread pool, and returns rows in canonical order.
pub fn run_scenarios(scenarios: &[Scenario], jobs: Option<usize>) -> Vec<CheckRow> {
    let tasks: Vec<(usize, CheckKind, f64)> = scenarios
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.checks
                .iter()
                .flat_map(move |&check| s.lambda_grid.iter().map(move |&l| (i, check, l)))
        })
        .collect();

    let compute = || {
        tasks
            .par_iter()
            .map(|&(i, check, lambda)| run_one(&scenarios[i], check, lambda))
            .collect::<Vec<_>>()
    };
    let mut rows = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(compute),
        None => compute(),
    };
    rows.sort_by(|x, y| {
        (x.scenario.as_str(), x.check.as_str())
            .cmp(&(y.scenario.as_str(), y.check.as_str()))
            .then(x.lambda.total_cmp(&y.lambda))
    });
    rows
}

/// 0 when nothing failed (skips allowed), 1 otherwise.
pub fn exit_code(rows: &[CheckRow]) -> i32 {
    if rows.iter().any(CheckRow::is_fail) {
        1
    } else {
        0
    }
}
