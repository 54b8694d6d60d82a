//! JSON and CSV interchange for matrices and samples.
//!
//! Numbers are written in shortest round-trip form, so re-parsing any output
//! recovers the exact `f64` bits.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::kernels::{CovarianceMatrix, PsdReport};
use crate::metrics::MetricKind;
use crate::simulate::FieldSample;

/// `{"metric": "...", "labels": [...], "matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(default)]
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psd: Option<PsdReport>,
}

impl MatrixReport {
    pub fn new(metric: Option<MetricKind>, labels: Vec<String>, m: &DMatrix<f64>) -> Self {
        MatrixReport {
            metric: metric.map(|k| k.to_string()),
            labels,
            matrix: rows(m),
            psd: None,
        }
    }

    pub fn to_dmatrix(&self) -> Option<DMatrix<f64>> {
        let n = self.matrix.len();
        let cols = self.matrix.first().map_or(0, Vec::len);
        if self.matrix.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(DMatrix::from_fn(n, cols, |i, j| self.matrix[i][j]))
    }

    pub fn to_csv(&self) -> String {
        csv(&self.labels, self.matrix.iter().map(Vec::as_slice))
    }
}

impl From<&CovarianceMatrix> for MatrixReport {
    fn from(c: &CovarianceMatrix) -> Self {
        MatrixReport {
            metric: Some(c.metric.to_string()),
            labels: c.labels.clone(),
            matrix: rows(&c.values),
            psd: c.psd_certificate,
        }
    }
}

/// `{"seed": .., "labels": [...], "jitter": .., "draws": [[...]]}`, one row
/// per draw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub seed: u64,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<f64>,
    pub draws: Vec<Vec<f64>>,
}

impl From<&FieldSample> for SampleReport {
    fn from(s: &FieldSample) -> Self {
        SampleReport {
            seed: s.seed,
            labels: s.labels.clone(),
            jitter: s.jitter,
            draws: rows(&s.draws),
        }
    }
}

impl SampleReport {
    pub fn into_sample(self) -> Option<FieldSample> {
        let p = self.labels.len();
        if self.draws.iter().any(|r| r.len() != p) {
            return None;
        }
        let n = self.draws.len();
        Some(FieldSample {
            draws: DMatrix::from_fn(n, p, |i, j| self.draws[i][j]),
            labels: self.labels,
            seed: self.seed,
            jitter: self.jitter,
        })
    }

    pub fn to_csv(&self) -> String {
        csv(&self.labels, self.draws.iter().map(Vec::as_slice))
    }
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Shortest round-trip text of a float; non-finite values as `NaN`/`inf`.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float serializes")
    } else {
        x.to_string()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv<'a>(header: &[String], body: impl Iterator<Item = &'a [f64]>) -> String {
    let mut out = header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in body {
        out.push_str(&row.iter().map(|&x| format_f64(x)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
