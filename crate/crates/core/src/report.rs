//! Outcome records for identity checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be evaluated; `note` carries the reason.
    Error,
}

/// One reading of an ambiguous formula, evaluated alongside the primary comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Variant {
    pub name: String,
    pub max_abs_error: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub mode: Mode,
    pub params: BTreeMap<String, String>,
    /// Largest deviation observed; `None` when nothing could be evaluated.
    pub max_abs_error: Option<f64>,
    pub threshold: f64,
    pub status: Status,
    pub nodes_used: usize,
    pub runtime_ms: f64,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub variants: Vec<Variant>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates deviations; the status is `Pass` iff every observation is within threshold
/// and no error was recorded.
#[derive(Debug)]
pub struct ReportBuilder {
    report: IdentityReport,
    started: Instant,
    failed: bool,
}

impl ReportBuilder {
    pub fn new(id: &str, mode: Mode, threshold: f64) -> Self {
        ReportBuilder {
            report: IdentityReport {
                identity_id: id.to_string(),
                mode,
                params: BTreeMap::new(),
                max_abs_error: None,
                threshold,
                status: Status::Pass,
                nodes_used: 0,
                runtime_ms: 0.0,
                seed: None,
                variants: Vec::new(),
                note: None,
            },
            started: Instant::now(),
            failed: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.report.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.report.seed = Some(seed);
        self
    }

    pub fn nodes(&mut self, n: usize) -> &mut Self {
        self.report.nodes_used += n;
        self
    }

    pub fn observe(&mut self, err: f64) -> &mut Self {
        let e = if err.is_nan() { f64::INFINITY } else { err };
        self.report.max_abs_error = Some(self.report.max_abs_error.map_or(e, |m| m.max(e)));
        if !(e <= self.report.threshold) {
            self.failed = true;
        }
        self
    }

    /// Records an evaluation failure; the report status becomes `Error`.
    pub fn error(&mut self, err: &Error) -> &mut Self {
        self.report.status = Status::Error;
        self.append_note(&err.to_string());
        self
    }

    pub fn append_note(&mut self, text: &str) -> &mut Self {
        match &mut self.report.note {
            Some(n) => {
                n.push_str("; ");
                n.push_str(text);
            }
            None => self.report.note = Some(text.to_string()),
        }
        self
    }

    /// Adds an informational variant; it does not affect the primary status.
    pub fn variant(&mut self, name: &str, outcome: std::result::Result<f64, Error>) -> &mut Self {
        let threshold = self.report.threshold;
        let v = match outcome {
            Ok(err) => Variant {
                name: name.to_string(),
                max_abs_error: Some(err),
                status: if err <= threshold { Status::Pass } else { Status::Fail },
                note: None,
            },
            Err(e) => Variant {
                name: name.to_string(),
                max_abs_error: None,
                status: Status::Error,
                note: Some(e.to_string()),
            },
        };
        match self.report.variants.iter_mut().find(|x| x.name == v.name) {
            Some(existing) => merge_variant(existing, v),
            None => self.report.variants.push(v),
        }
        self
    }

    pub fn finish(mut self) -> IdentityReport {
        self.report.runtime_ms = self.started.elapsed().as_secs_f64() * 1e3;
        if self.report.status != Status::Error {
            self.report.status = if self.failed || self.report.max_abs_error.is_none() {
                Status::Fail
            } else {
                Status::Pass
            };
        }
        self.report
    }
}

/// Worst case of two outcomes of the same variant at different points.
fn merge_variant(into: &mut Variant, v: Variant) {
    let rank = |s: Status| match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Error => 2,
    };
    into.max_abs_error = match (into.max_abs_error, v.max_abs_error) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    if rank(v.status) > rank(into.status) {
        into.status = v.status;
        if v.note.is_some() {
            into.note = v.note;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_threshold() {
        let mut b = ReportBuilder::new("x", Mode::Numeric, 1e-8);
        b.observe(1e-9).observe(5e-9);
        assert_eq!(b.finish().status, Status::Pass);
        let mut b = ReportBuilder::new("x", Mode::Numeric, 1e-8);
        b.observe(1e-9).observe(2e-8);
        let r = b.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.max_abs_error, Some(2e-8));
    }

    #[test]
    fn nan_counts_as_failure() {
        let mut b = ReportBuilder::new("x", Mode::Numeric, 1.0);
        b.observe(f64::NAN);
        assert_eq!(b.finish().status, Status::Fail);
    }

    #[test]
    fn variants_merge_to_worst() {
        let mut b = ReportBuilder::new("x", Mode::Numeric, 1e-8);
        b.variant("v", Ok(1e-10)).variant("v", Ok(1e-3)).observe(0.0);
        let r = b.finish();
        assert_eq!(r.variants.len(), 1);
        assert_eq!(r.variants[0].status, Status::Fail);
        assert_eq!(r.variants[0].max_abs_error, Some(1e-3));
    }

    #[test]
    fn json_round_trip() {
        let mut b = ReportBuilder::new("thm1-watson", Mode::Exact, 0.0);
        b.param("order", 100).seed(7).observe(0.0);
        let r = b.finish();
        let back: IdentityReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
