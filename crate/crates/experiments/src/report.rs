//! Report records, log-log regression and CSV/JSON output.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub observed: f64,
    pub predicted: f64,
    /// Always `observed − predicted`.
    pub residual: f64,
    pub normalized: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
}

impl Row {
    pub fn new(x: Option<u64>, observed: f64, predicted: f64) -> Self {
        Self {
            label: None,
            x,
            q: None,
            observed,
            predicted,
            residual: observed - predicted,
            normalized: f64::NAN,
            extras: BTreeMap::new(),
        }
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn q(mut self, q: u64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn normalized(mut self, v: f64) -> Self {
        self.normalized = v;
        self
    }

    pub fn extra(mut self, key: &str, v: f64) -> Self {
        self.extras.insert(key.to_owned(), v);
        self
    }
}

/// Least-squares line through `(log x, log value)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    /// What was regressed, e.g. `"|residual|"`.
    pub quantity: String,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Fits `log y = slope·log x + intercept` over the points with `x, y > 0`.
///
/// Needs at least two distinct `x`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if n < 2.0 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 1e-12 * mx.abs().max(1.0) {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Some((slope, intercept, r2))
}

pub fn fit_of(quantity: &str, points: &[(f64, f64)]) -> Option<Fit> {
    fit_loglog(points).map(|(slope, intercept, r2)| Fit {
        quantity: quantity.to_owned(),
        slope,
        intercept,
        r2,
    })
}

fn num(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e6) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// A single pass/fail assertion with the measured value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: String,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, max: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: format!("<= {}", num(max)),
            pass: value <= max,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: format!("in [{}, {}]", num(lo), num(hi)),
            pass: lo <= value && value <= hi,
        }
    }

    /// `value` is the number of violations.
    pub fn none_of(name: impl Into<String>, violations: usize) -> Self {
        Self {
            name: name.into(),
            value: violations as f64,
            bound: "== 0".into(),
            pass: violations == 0,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {:.6e} ({})", self.name, self.value, self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
    pub fit: Option<Fit>,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Rendered symbolic entries, for reports that carry formulas.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub symbolic: BTreeMap<String, String>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_owned(),
            params: BTreeMap::new(),
            rows: Vec::new(),
            fit: None,
            pass: false,
            checks: Vec::new(),
            symbolic: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.params.insert(key.to_owned(), v);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Sets `pass` from the checks; rejects an empty report.
    pub fn finish(mut self) -> Result<Self> {
        if self.rows.is_empty() {
            return invalid(format!("report {} has no rows", self.name));
        }
        self.pass = self.checks.iter().all(|c| c.pass);
        Ok(self)
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    /// Rows only; extras become trailing columns in key order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let keys: BTreeSet<&String> = self.rows.iter().flat_map(|r| r.extras.keys()).collect();
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = vec!["label", "x", "q", "observed", "predicted", "residual", "normalized"];
        header.extend(keys.iter().map(|k| k.as_str()));
        w.write_record(&header)?;
        let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let mut rec = vec![
                r.label.clone().unwrap_or_default(),
                opt(r.x),
                opt(r.q),
                r.observed.to_string(),
                r.predicted.to_string(),
                r.residual.to_string(),
                r.normalized.to_string(),
            ];
            rec.extend(
                keys.iter()
                    .map(|k| r.extras.get(*k).map(|v| v.to_string()).unwrap_or_default()),
            );
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// One line per check, then the fit.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{}: {c}\n", self.name));
        }
        if let Some(f) = &self.fit {
            s.push_str(&format!(
                "{}: fit of log {} vs log x: slope {:.4}, intercept {:.4}, r2 {:.4}\n",
                self.name, f.quantity, f.slope, f.intercept, f.r2
            ));
        }
        s
    }
}
