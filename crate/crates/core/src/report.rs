//! Verification reports and their machine/table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A parameter value attached to a catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Real(f64),
    Complex { re: f64, im: f64 },
    Text(String),
}

impl ParamValue {
    pub fn as_complex(&self) -> Option<Complex64> {
        match *self {
            ParamValue::Real(x) => Some(Complex64::new(x, 0.0)),
            ParamValue::Complex { re, im } => Some(Complex64::new(re, im)),
            ParamValue::Text(_) => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match *self {
            ParamValue::Real(x) => Some(x),
            ParamValue::Complex { re, im: 0.0 } => Some(re),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            ParamValue::Text(s) => Some(s),
            _ => None,
        }
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Real(x)
    }
}

impl From<Complex64> for ParamValue {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            ParamValue::Real(z.re)
        } else {
            ParamValue::Complex { re: z.re, im: z.im }
        }
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_owned())
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Real(x) => write!(f, "{x}"),
            ParamValue::Complex { re, im } => write!(f, "{re}{im:+}i"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// Named parameters of one catalog evaluation, ordered by name.
pub type Params = BTreeMap<String, ParamValue>;

/// `{re, im}` form used in the serialized report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexRecord {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexRecord> for Complex64 {
    fn from(c: ComplexRecord) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub lhs: ComplexRecord,
    pub rhs: ComplexRecord,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub evaluations: usize,
    pub wall_time_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdentityReport {
    pub fn lhs(&self) -> Complex64 {
        self.lhs.into()
    }

    pub fn rhs(&self) -> Complex64 {
        self.rhs.into()
    }

    fn params_label(&self) -> String {
        if self.params.is_empty() {
            return "-".into();
        }
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Aggregate counts over a batch of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Self {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// JSON array of reports.
pub fn to_json(reports: &[IdentityReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports are always serializable")
}

pub fn from_json(text: &str) -> serde_json::Result<Vec<IdentityReport>> {
    serde_json::from_str(text)
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:+.12e}{:+.3e}i", z.re, z.im)
}

/// Aligned plain-text table.
pub fn to_table(reports: &[IdentityReport]) -> String {
    let header = ["id", "params", "lhs", "rhs", "abs_err", "tol", "pass", "evals", "ms"];
    let rows: Vec<[String; 9]> = reports
        .iter()
        .map(|r| {
            [
                r.id.clone(),
                r.params_label(),
                fmt_complex(r.lhs()),
                fmt_complex(r.rhs()),
                format!("{:.2e}", r.abs_err),
                format!("{:.1e}", r.tol),
                if r.pass { "PASS" } else { "FAIL" }.to_owned(),
                r.evaluations.to_string(),
                format!("{:.1}", r.wall_time_ms),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let mut first = true;
        for (cell, w) in cells.zip(&widths) {
            if !first {
                out.push_str("  ");
            }
            first = false;
            let _ = write!(out, "{cell:<w$}");
        }
        let trimmed = out.trim_end().len();
        out.truncate(trimmed);
        out.push('\n');
    };
    line(&mut out, &mut header.iter().copied());
    for row in &rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    for r in reports.iter().filter(|r| r.error.is_some()) {
        let _ = writeln!(out, "{} [{}]: {}", r.id, r.params_label(), r.error.as_deref().unwrap_or(""));
    }
    let s = Summary::of(reports);
    let _ = writeln!(out, "{} passed, {} failed, {} total", s.passed, s.failed, s.total);
    out
}
