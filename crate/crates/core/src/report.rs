//! Machine-readable run reports with canonical serialization: fixed key
//! order and floats printed at 17 significant digits, so a report parsed
//! back and re-serialized is byte-identical.

use std::io;

use serde::{Deserialize, Serialize};

use crate::soliton::{AffineForm, PotentialField, SolitonParams};
use crate::verify::ResidualReport;

/// Echo of the parsed command-line parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

/// Soliton constant and case data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolitonSummary {
    pub lambda: f64,
    /// `[delta1, delta2, delta3, delta4, delta]`.
    pub deltas: Vec<f64>,
    pub case: String,
    #[serde(rename = "type")]
    pub soliton_type: String,
}

impl SolitonSummary {
    pub fn from_params(p: &SolitonParams) -> Self {
        Self {
            lambda: p.lambda,
            deltas: vec![p.delta1, p.delta2, p.delta3, p.delta4, p.delta],
            case: p.case_tag.to_string(),
            soliton_type: p.soliton_type.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineSummary {
    pub u1: f64,
    pub u2: f64,
    #[serde(rename = "const")]
    pub constant: f64,
}

impl From<&AffineForm> for AffineSummary {
    fn from(form: &AffineForm) -> Self {
        Self { u1: form.coef_u1, u2: form.coef_u2, constant: form.constant }
    }
}

/// Description of a constructed potential field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub family: String,
    pub case: String,
    pub rate: f64,
    pub a1: AffineSummary,
    pub b1: AffineSummary,
    pub a2: AffineSummary,
    pub b2: AffineSummary,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

impl FieldSummary {
    pub fn from_field(pf: &PotentialField) -> Self {
        Self {
            family: pf.family.to_string(),
            case: pf.case_tag.to_string(),
            rate: pf.rate,
            a1: AffineSummary::from(&pf.a1),
            b1: AffineSummary::from(&pf.b1),
            a2: AffineSummary::from(&pf.a2),
            b2: AffineSummary::from(&pf.b2),
            c: pf.c,
            d: pf.d,
        }
    }
}

/// One named residual check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub name: String,
    pub max: f64,
    pub pass: bool,
}

impl ResidualSummary {
    pub fn from_report(name: &str, report: &ResidualReport) -> Self {
        Self { name: name.to_string(), max: report.max_residual, pass: report.pass }
    }
}

/// One row of the classification table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub mu: f64,
    pub delta_sign: String,
    pub case: String,
    pub soliton: String,
    pub group: String,
}

/// Curvature data of a model space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSummary {
    pub k_e1_e2: f64,
    pub k_e1_xi: f64,
    pub k_e2_xi: f64,
    pub ricci_diag: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

/// Residual of the chart verification at one sample point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartSample {
    pub point: [f64; 3],
    pub max: f64,
}

/// Off-origin chart residual data; emitted for inspection, never gated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartSummary {
    pub origin_matrix: [[f64; 3]; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_sample: Option<ChartSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_samples: Option<Vec<ChartSample>>,
}

/// Full machine-readable result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: ParamsEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub soliton: Option<SolitonSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartSummary>,
    pub residuals: Vec<ResidualSummary>,
    pub pass: bool,
    pub wall_time_ms: u64,
}

/// JSON formatter that prints every float with 17 significant digits, so
/// the text representation round-trips f64 exactly.
struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize a report to canonical JSON.
pub fn to_canonical_json(report: &RunReport) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    report
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("canonical JSON is UTF-8")
}

/// Parse a report back from its JSON form.
pub fn from_json(text: &str) -> serde_json::Result<RunReport> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> RunReport {
        RunReport {
            command: "classify".into(),
            params: ParamsEcho { mu: Some(0.5), beta: Some(0.0), ..Default::default() },
            soliton: Some(SolitonSummary {
                lambda: 1.5,
                deltas: vec![1.5, 1.5, 1.5, -0.5, -0.75],
                case: "II".into(),
                soliton_type: "shrinking".into(),
            }),
            group: Some("SU(2)".into()),
            field: None,
            table: None,
            curvature: None,
            chart: None,
            residuals: vec![ResidualSummary { name: "origin".into(), max: 3.2e-16, pass: true }],
            pass: true,
            wall_time_ms: 0,
        }
    }

    #[test]
    fn json_round_trips_byte_identical() {
        let report = sample_report();
        let first = to_canonical_json(&report);
        let reparsed = from_json(&first).unwrap();
        assert_eq!(reparsed, report);
        let second = to_canonical_json(&reparsed);
        assert_eq!(first, second);
    }

    #[test]
    fn floats_use_seventeen_significant_digits() {
        let text = to_canonical_json(&sample_report());
        assert!(text.contains("1.5000000000000000e0"));
        assert!(text.contains("-7.5000000000000000e-1"));
        assert!(text.contains("3.2000000000000001e-16"));
    }

    #[test]
    fn key_order_is_fixed() {
        let text = to_canonical_json(&sample_report());
        let command = text.find("\"command\"").unwrap();
        let params = text.find("\"params\"").unwrap();
        let soliton = text.find("\"soliton\"").unwrap();
        let pass = text.find("\"pass\"").unwrap();
        assert!(command < params && params < soliton && soliton < pass);
    }
}
