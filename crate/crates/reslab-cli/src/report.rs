//! Check rows and their CSV/JSON renderings.
//!
//! Formatting is fixed (17 significant digits, canonical zero) so repeated
//! runs of the same scenarios produce byte-identical files.

use serde::Serialize;

/// Machine-readable reasons a check row was skipped rather than judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    /// A real resonance point sits inside (or on) the requested range.
    RealResonance,
    /// The energy hits an atom or support endpoint of the measure.
    MeasureZeroPoint,
    /// The check is defined for rank-one (scalar) families only.
    RankOneOnly,
    /// The check needs a real resonance point and the interval has none.
    NoRealResonance,
    /// Any other module error (refinement caps, divergent limits, ...).
    NumericError,
}

impl SkipReason {
    pub fn code(self) -> &'static str {
        match self {
            SkipReason::RealResonance => "REAL_RESONANCE",
            SkipReason::MeasureZeroPoint => "MEASURE_ZERO_POINT",
            SkipReason::RankOneOnly => "RANK_ONE_ONLY",
            SkipReason::NoRealResonance => "NO_REAL_RESONANCE",
            SkipReason::NumericError => "NUMERIC_ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped(SkipReason),
}

/// One verification row: a check at one energy of one scenario.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub scenario: String,
    pub check: String,
    pub lambda: f64,
    /// The resonance point or coupling range the row refers to.
    pub locus: String,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: RowStatus,
}

impl CheckRow {
    /// Judges measured against expected: pass iff |measured − expected| ≤
    /// tolerance (NaN anywhere fails).
    pub fn judged(
        scenario: &str,
        check: &str,
        lambda: f64,
        locus: String,
        measured: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let status = if (measured - expected).abs() <= tolerance {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        };
        Self {
            scenario: scenario.to_string(),
            check: check.to_string(),
            lambda,
            locus,
            measured: Some(measured),
            expected: Some(expected),
            tolerance: Some(tolerance),
            status,
        }
    }

    pub fn skipped(scenario: &str, check: &str, lambda: f64, reason: SkipReason) -> Self {
        Self {
            scenario: scenario.to_string(),
            check: check.to_string(),
            lambda,
            locus: String::new(),
            measured: None,
            expected: None,
            tolerance: None,
            status: RowStatus::Skipped(reason),
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == RowStatus::Fail
    }
}

/// Fixed-width float rendering: 17 significant digits, negative zero
/// canonicalized, so report bytes depend only on the values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn status_text(status: &RowStatus) -> (&'static str, &'static str) {
    match status {
        RowStatus::Pass => ("pass", ""),
        RowStatus::Fail => ("fail", ""),
        RowStatus::Skipped(reason) => ("skipped", reason.code()),
    }
}

pub const CSV_HEADER: &str =
    "scenario,check,lambda,r_or_interval,measured,expected,tolerance,status,reason";

/// Renders rows as CSV with the normative column order.
pub fn csv_report(rows: &[CheckRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96 + 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let (status, reason) = status_text(&row.status);
        let field = |v: Option<f64>| v.map(format_float).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.scenario,
            row.check,
            format_float(row.lambda),
            row.locus,
            field(row.measured),
            field(row.expected),
            field(row.tolerance),
            status,
            reason,
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    scenario: &'a str,
    check: &'a str,
    lambda: f64,
    r_or_interval: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    status: &'a str,
    #[serde(skip_serializing_if = "str::is_empty")]
    reason: &'a str,
}

#[derive(Serialize)]
struct JsonSummary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    summary: JsonSummary,
    rows: Vec<JsonRow<'a>>,
}

/// Renders rows as a JSON document with a summary header.
pub fn json_report(rows: &[CheckRow]) -> String {
    let mut summary = JsonSummary {
        pass: 0,
        fail: 0,
        skipped: 0,
    };
    let json_rows = rows
        .iter()
        .map(|row| {
            let (status, reason) = status_text(&row.status);
            match row.status {
                RowStatus::Pass => summary.pass += 1,
                RowStatus::Fail => summary.fail += 1,
                RowStatus::Skipped(_) => summary.skipped += 1,
            }
            JsonRow {
                scenario: &row.scenario,
                check: &row.check,
                lambda: row.lambda,
                r_or_interval: &row.locus,
                measured: row.measured,
                expected: row.expected,
                tolerance: row.tolerance,
                status,
                reason,
            }
        })
        .collect();
    let report = JsonReport {
        summary,
        rows: json_rows,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_canonical() {
        assert_eq!(format_float(0.0), format_float(-0.0));
        assert_eq!(format_float(0.25), "2.5000000000000000e-1");
        assert_eq!(format_float(-2.0), "-2.0000000000000000e0");
    }

    #[test]
    fn judgement_follows_tolerance() {
        let pass = CheckRow::judged("s", "c", 0.0, String::new(), 1.0, 1.0 + 1e-9, 1e-6);
        assert_eq!(pass.status, RowStatus::Pass);
        let fail = CheckRow::judged("s", "c", 0.0, String::new(), 1.0, 1.1, 1e-6);
        assert!(fail.is_fail());
        let nan = CheckRow::judged("s", "c", 0.0, String::new(), f64::NAN, 1.0, 1e-6);
        assert!(nan.is_fail());
    }

    #[test]
    fn csv_has_normative_header_and_reason_codes() {
        let rows = vec![
            CheckRow::judged("a", "eq1", 0.0, "0".into(), -2.0, -2.0, 1e-6),
            CheckRow::skipped("a", "eq2", 0.5, SkipReason::MeasureZeroPoint),
        ];
        let csv = csv_report(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert!(lines.next().unwrap().ends_with("pass,"));
        assert!(lines.next().unwrap().ends_with("skipped,MEASURE_ZERO_POINT"));
    }
}
