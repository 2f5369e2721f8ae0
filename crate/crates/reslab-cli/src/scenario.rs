//! Scenario files: one JSON document describing a model, an energy grid, a
//! coupling interval, and the checks to run.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::Deserialize;

use reslab_core::herglotz::{MatrixHerglotzModel, ScalarHerglotzModel};
use reslab_core::numerics::CMatrix;

/// The nine check names a scenario may request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Eq1,
    Lorentzian,
    TraceIdentity,
    TotalVariation,
    Eq2,
    Ssf,
    ResonanceIndex,
    Continuation,
    Herglotz,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Eq1,
        CheckKind::Lorentzian,
        CheckKind::TraceIdentity,
        CheckKind::TotalVariation,
        CheckKind::Eq2,
        CheckKind::Ssf,
        CheckKind::ResonanceIndex,
        CheckKind::Continuation,
        CheckKind::Herglotz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Eq1 => "eq1",
            CheckKind::Lorentzian => "lorentzian",
            CheckKind::TraceIdentity => "trace_identity",
            CheckKind::TotalVariation => "total_variation",
            CheckKind::Eq2 => "eq2",
            CheckKind::Ssf => "ssf",
            CheckKind::ResonanceIndex => "resonance_index",
            CheckKind::Continuation => "continuation",
            CheckKind::Herglotz => "herglotz",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            CheckKind::Eq1 => 1e-6,
            CheckKind::Lorentzian => 1e-6,
            CheckKind::TraceIdentity => 1e-10,
            CheckKind::TotalVariation => 1e-4,
            CheckKind::Eq2 => 1e-6,
            CheckKind::Ssf => 1e-9,
            CheckKind::ResonanceIndex => 0.05,
            CheckKind::Continuation => 0.5,
            CheckKind::Herglotz => 1.0,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = CheckKind::ALL.iter().map(|k| k.name()).collect();
                anyhow::anyhow!("unknown check {s:?}; valid checks: {}", valid.join(", "))
            })
    }
}

/// Either side of the engine split: rank-one checks need the scalar model,
/// finite-rank checks wrap scalars as 1x1 matrix families.
#[derive(Debug, Clone)]
pub enum BuiltModel {
    Scalar(ScalarHerglotzModel),
    Matrix(MatrixHerglotzModel),
}

impl BuiltModel {
    pub fn as_scalar(&self) -> Option<&ScalarHerglotzModel> {
        match self {
            BuiltModel::Scalar(m) => Some(m),
            BuiltModel::Matrix(_) => None,
        }
    }

    pub fn to_matrix(&self) -> MatrixHerglotzModel {
        match self {
            BuiltModel::Scalar(m) => MatrixHerglotzModel::from_scalar(m.clone()),
            BuiltModel::Matrix(m) => m.clone(),
        }
    }

    /// Scalar factors whose Herglotz properties the `herglotz` check
    /// verifies: the model itself, or every term of a matrix family.
    pub fn scalar_factors(&self) -> Vec<&ScalarHerglotzModel> {
        match self {
            BuiltModel::Scalar(m) => vec![m],
            BuiltModel::Matrix(m) => m.terms().iter().map(|(_, model)| model).collect(),
        }
    }
}

/// A fully validated scenario ready for the runner.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub model: BuiltModel,
    pub lambda_grid: Vec<f64>,
    pub interval: (f64, f64),
    pub checks: Vec<CheckKind>,
    tolerances: BTreeMap<CheckKind, f64>,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        model: BuiltModel,
        lambda_grid: Vec<f64>,
        interval: (f64, f64),
        checks: Vec<CheckKind>,
    ) -> Self {
        Self {
            name: name.into(),
            model,
            lambda_grid,
            interval,
            checks,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn tolerance(&self, check: CheckKind) -> f64 {
        self.tolerances
            .get(&check)
            .copied()
            .unwrap_or_else(|| check.default_tolerance())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    model: ModelSpec,
    lambda_grid: Vec<f64>,
    interval: [f64; 2],
    #[serde(default)]
    checks: Option<Vec<String>>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
}

#[derive(Deserialize, Clone)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ModelSpec {
    Cauchy {
        center: f64,
        scale: f64,
        #[serde(default = "default_mass")]
        mass: f64,
    },
    Semicircle {
        halfwidth: f64,
        #[serde(default = "default_mass")]
        mass: f64,
    },
    Uniform {
        a: f64,
        b: f64,
        #[serde(default = "default_mass")]
        mass: f64,
    },
    PointMasses {
        masses: Vec<(f64, f64)>,
    },
    Combination {
        terms: Vec<CombinationTermSpec>,
    },
    Matrix {
        signature: Vec<i8>,
        terms: Vec<MatrixTermSpec>,
    },
}

fn default_mass() -> f64 {
    1.0
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct CombinationTermSpec {
    weight: f64,
    model: ModelSpec,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct MatrixTermSpec {
    /// k x k complex matrix as rows of [re, im] pairs.
    coefficient: Vec<Vec<[f64; 2]>>,
    model: ModelSpec,
}

fn build_scalar(spec: &ModelSpec) -> Result<ScalarHerglotzModel> {
    match spec {
        ModelSpec::Cauchy {
            center,
            scale,
            mass,
        } => Ok(ScalarHerglotzModel::cauchy_with_mass(*center, *scale, *mass)?),
        ModelSpec::Semicircle { halfwidth, mass } => Ok(
            ScalarHerglotzModel::semicircle_with_mass(*halfwidth, *mass)?,
        ),
        ModelSpec::Uniform { a, b, mass } => {
            Ok(ScalarHerglotzModel::uniform_with_mass(*a, *b, *mass)?)
        }
        ModelSpec::PointMasses { masses } => {
            Ok(ScalarHerglotzModel::point_masses(masses.clone())?)
        }
        ModelSpec::Combination { terms } => {
            let built = terms
                .iter()
                .map(|t| Ok((t.weight, build_scalar(&t.model)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ScalarHerglotzModel::combination(built)?)
        }
        ModelSpec::Matrix { .. } => bail!("matrix models cannot nest inside scalar terms"),
    }
}

fn build_model(spec: &ModelSpec) -> Result<BuiltModel> {
    if let ModelSpec::Matrix { signature, terms } = spec {
        let dim = signature.len();
        let built_terms = terms
            .iter()
            .map(|term| {
                if term.coefficient.len() != dim
                    || term.coefficient.iter().any(|row| row.len() != dim)
                {
                    bail!(
                        "coefficient matrix must be {dim}x{dim} to match the signature length"
                    );
                }
                let data: Vec<Complex64> = term
                    .coefficient
                    .iter()
                    .flatten()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect();
                let c = CMatrix::from_rows(dim, data)?;
                Ok((c, build_scalar(&term.model)?))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(BuiltModel::Matrix(MatrixHerglotzModel::new(
            signature.clone(),
            built_terms,
        )?));
    }
    Ok(BuiltModel::Scalar(build_scalar(spec)?))
}

fn validate(file: ScenarioFile) -> Result<Scenario> {
    if file.lambda_grid.is_empty() {
        bail!("lambda_grid must contain at least one energy");
    }
    if file.lambda_grid.iter().any(|l| !l.is_finite()) {
        bail!("lambda_grid entries must be finite");
    }
    let [a, b] = file.interval;
    if !a.is_finite() || !b.is_finite() || a > b {
        bail!("interval must be finite with a <= b, got [{a}, {b}]");
    }
    let model = build_model(&file.model)?;
    let checks = match &file.checks {
        None => CheckKind::ALL.to_vec(),
        Some(names) => {
            let mut checks = Vec::with_capacity(names.len());
            for name in names {
                checks.push(name.parse::<CheckKind>()?);
            }
            checks
        }
    };
    let mut tolerances = BTreeMap::new();
    for (name, tol) in &file.tolerances {
        let kind = name.parse::<CheckKind>()?;
        if !tol.is_finite() || *tol <= 0.0 {
            bail!("tolerance for {name} must be positive, got {tol}");
        }
        tolerances.insert(kind, *tol);
    }
    Ok(Scenario {
        name: file.name,
        model,
        lambda_grid: file.lambda_grid,
        interval: (a, b),
        checks,
        tolerances,
    })
}

/// Parses and fully validates one scenario JSON document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text).context("malformed scenario JSON")?;
    validate(file)
}

/// Loads a scenario from disk.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read scenario file {}", path.display()))?;
    parse_scenario(&text).with_context(|| format!("in scenario file {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_fills_defaults() {
        let s = parse_scenario(
            r#"{
                "name": "minimal",
                "model": {"type": "cauchy", "center": 0.0, "scale": 1.0},
                "lambda_grid": [0.0],
                "interval": [0.0, 1.0],
                "checks": ["eq1"]
            }"#,
        )
        .unwrap();
        assert_eq!(s.name, "minimal");
        assert_eq!(s.checks, vec![CheckKind::Eq1]);
        assert_eq!(s.tolerance(CheckKind::Eq1), 1e-6);
        assert!(s.model.as_scalar().is_some());
    }

    #[test]
    fn omitted_checks_mean_all() {
        let s = parse_scenario(
            r#"{
                "name": "all",
                "model": {"type": "semicircle", "halfwidth": 2.0},
                "lambda_grid": [0.5],
                "interval": [-1.0, 1.0]
            }"#,
        )
        .unwrap();
        assert_eq!(s.checks.len(), 9);
    }

    #[test]
    fn bad_signature_is_reported_verbatim() {
        let err = parse_scenario(
            r#"{
                "name": "bad",
                "model": {"type": "matrix", "signature": [2],
                          "terms": [{"coefficient": [[[1.0, 0.0]]],
                                     "model": {"type": "cauchy", "center": 0.0, "scale": 1.0}}]},
                "lambda_grid": [0.0],
                "interval": [0.0, 1.0]
            }"#,
        )
        .unwrap_err();
        assert!(
            format!("{err:#}").contains("signature entries must be \u{b1}1")
                || format!("{err:#}").contains("signature entries must be"),
            "got: {err:#}"
        );
    }

    #[test]
    fn unknown_check_is_rejected() {
        let err = parse_scenario(
            r#"{
                "name": "bad-check",
                "model": {"type": "cauchy", "center": 0.0, "scale": 1.0},
                "lambda_grid": [0.0],
                "interval": [0.0, 1.0],
                "checks": ["eq3"]
            }"#,
        )
        .unwrap_err();
        assert!(format!("{err:#}").contains("unknown check"));
    }

    #[test]
    fn matrix_scenario_round_trips() {
        let s = parse_scenario(
            r#"{
                "name": "k2",
                "model": {"type": "matrix", "signature": [1, 1], "terms": [
                    {"coefficient": [[[1.0, 0.0], [0.3, 0.0]], [[0.3, 0.0], [0.5, 0.0]]],
                     "model": {"type": "cauchy", "center": 0.0, "scale": 1.0}},
                    {"coefficient": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
                     "model": {"type": "semicircle", "halfwidth": 2.0}}
                ]},
                "lambda_grid": [0.0],
                "interval": [0.0, 2.0],
                "checks": ["eq2"]
            }"#,
        )
        .unwrap();
        let matrix = s.model.to_matrix();
        assert_eq!(matrix.dim(), 2);
        let boundary = matrix.eval_boundary(0.0).unwrap();
        assert_eq!(boundary.dim(), 2);
    }

    #[test]
    fn inverted_interval_is_rejected() {
        let err = parse_scenario(
            r#"{
                "name": "inv",
                "model": {"type": "cauchy", "center": 0.0, "scale": 1.0},
                "lambda_grid": [0.0],
                "interval": [1.0, 0.0]
            }"#,
        )
        .unwrap_err();
        assert!(format!("{err:#}").contains("interval"));
    }

    #[test]
    fn overflowing_interval_is_rejected() {
        // 1e999 does not fit an f64; the number parser refuses it before
        // validation ever sees the field.
        let err = parse_scenario(
            r#"{
                "name": "inf",
                "model": {"type": "cauchy", "center": 0.0, "scale": 1.0},
                "lambda_grid": [0.0],
                "interval": [0.0, 1e999]
            }"#,
        )
        .unwrap_err();
        assert!(format!("{err:#}").contains("out of range"), "err: {err:#}");
    }
}
