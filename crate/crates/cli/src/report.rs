use std::collections::BTreeMap;
use std::fmt::Write as _;

use duflo_cw_core::report::CheckReport;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
    /// Exact values as canonical strings.
    pub values: BTreeMap<String, String>,
    pub residuals: BTreeMap<String, f64>,
}

impl Check {
    pub fn new(id: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self { id: id.into(), status, detail: detail.into(), values: BTreeMap::new(), residuals: BTreeMap::new() }
    }

    pub fn from_bool(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(id, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn from_report(id: impl Into<String>, rep: &CheckReport) -> Self {
        let detail = if rep.passed() { String::new() } else { rep.violations.join("; ") };
        let mut c = Self::from_bool(id, rep.passed(), detail);
        for (k, v) in &rep.values {
            c.values.insert(k.clone(), v.clone());
        }
        c
    }

    pub fn value(mut self, k: impl Into<String>, v: impl Into<String>) -> Self {
        self.values.insert(k.into(), v.into());
        self
    }

    pub fn residual(mut self, k: impl Into<String>, v: f64) -> Self {
        self.residuals.insert(k.into(), v);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Free-form tables (index coefficients, heat samples) for human output.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { schema: SCHEMA, suite: suite.into(), status: Status::Pass, checks: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
        self.refresh();
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.status = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Flagged) {
            Status::Flagged
        } else {
            Status::Pass
        };
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for n in &self.notes {
            out.push_str(n);
            if !n.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checks {
            let _ = write!(out, "{} {}", c.status.label(), c.id);
            if !c.detail.is_empty() {
                let _ = write!(out, ": {}", c.detail);
            }
            out.push('\n');
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} flagged",
            self.suite,
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Flagged)
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregation() {
        let mut r = Report::new("t");
        r.push(Check::from_bool("a", true, ""));
        assert_eq!(r.status, Status::Pass);
        r.push(Check::new("b", Status::Flagged, "slow convergence"));
        assert_eq!(r.status, Status::Flagged);
        assert!(!r.failed());
        r.push(Check::from_bool("c", false, "broken"));
        assert!(r.failed());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["checks"][1]["status"], "flagged");
    }
}
