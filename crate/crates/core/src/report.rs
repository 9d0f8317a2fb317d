//! Structured pass/fail records.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified identity: the largest residual seen and the tolerance it was held to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Identifies the mathematical statement being certified.
    pub anchor: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    /// Wall time; kept out of the serialized form so output is reproducible.
    #[serde(skip)]
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes iff `residual ≤ tolerance`; NaN always fails.
    pub fn measured(name: &str, anchor: &str, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            anchor: anchor.into(),
            status,
            residual,
            tolerance,
            elapsed_ms: 0.0,
            note: None,
        }
    }

    /// Runs `f` and records its residual together with the elapsed time.
    pub fn timed(name: &str, anchor: &str, tolerance: f64, f: impl FnOnce() -> f64) -> Self {
        let start = Instant::now();
        let r = f();
        let mut c = Self::measured(name, anchor, r, tolerance);
        c.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        c
    }

    /// A boolean condition expressed as residual 0 (holds) or 1 (fails).
    pub fn condition(name: &str, anchor: &str, holds: bool) -> Self {
        Self::measured(name, anchor, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn skipped(name: &str, anchor: &str, reason: &str) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            residual: 0.0,
            tolerance: 0.0,
            elapsed_ms: 0.0,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// A list of checks about one subject plus free-form numeric details.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.details.insert(key.into(), v);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.details {
            self.details.insert(format!("{prefix}{k}"), v);
        }
    }

    /// No check failed (skipped checks do not count against the report).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.status != Status::Skipped)
            .fold(0.0, |m, c| {
                if c.residual.is_nan() {
                    f64::NAN
                } else {
                    m.max(c.residual)
                }
            })
    }

    /// Merges same-subject reports from repeated trials: a check fails if it
    /// failed anywhere, is skipped only if skipped everywhere, and keeps the
    /// largest residual.
    pub fn aggregate(subject: impl Into<String>, reports: &[CheckReport]) -> Self {
        let mut merged: BTreeMap<String, (Check, usize, usize)> = BTreeMap::new();
        for r in reports {
            for c in &r.checks {
                let e = merged
                    .entry(c.name.clone())
                    .or_insert_with(|| (c.clone(), 0, 0));
                if c.status != Status::Skipped {
                    e.1 += 1;
                    if e.0.status == Status::Skipped {
                        e.0.status = Status::Pass;
                    }
                    if c.status == Status::Fail {
                        e.2 += 1;
                        e.0.status = Status::Fail;
                    }
                    if c.residual.is_nan() || c.residual > e.0.residual {
                        e.0.residual = c.residual;
                    }
                    e.0.tolerance = c.tolerance;
                }
            }
        }
        let mut out = Self::new(subject);
        for (_, (mut c, run, failed)) in merged {
            if run > 0 {
                c.note = Some(format!("{}/{run} passed", run - failed));
            }
            out.checks.push(c);
        }
        out.detail("trials", reports.len());
        out.detail(
            "trials_passed",
            reports.iter().filter(|r| r.passed()).count(),
        );
        out
    }

    /// Sorts checks by name for canonical output.
    pub fn canonicalize(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// Every check must carry an anchor and a status consistent with its residual.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for c in &self.checks {
            if c.anchor.trim().is_empty() {
                return Err(format!("check `{}` has an empty anchor", c.name));
            }
            let consistent = match c.status {
                Status::Pass => c.residual <= c.tolerance,
                Status::Fail => !(c.residual <= c.tolerance),
                Status::Skipped => true,
            };
            if !consistent {
                return Err(format!(
                    "check `{}` status disagrees with its residual",
                    c.name
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_residual() {
        assert_eq!(Check::measured("a", "x", 1e-10, 1e-9).status, Status::Pass);
        assert_eq!(Check::measured("a", "x", 1e-9, 1e-9).status, Status::Pass);
        assert_eq!(Check::measured("a", "x", 2e-9, 1e-9).status, Status::Fail);
        assert_eq!(
            Check::measured("a", "x", f64::NAN, 1e-9).status,
            Status::Fail
        );
    }

    #[test]
    fn aggregate_keeps_worst() {
        let mut a = CheckReport::new("s");
        a.push(Check::measured("x", "x", 1e-12, 1e-9));
        a.push(Check::skipped("y", "y", "n/a"));
        let mut b = CheckReport::new("s");
        b.push(Check::measured("x", "x", 1e-6, 1e-9));
        b.push(Check::skipped("y", "y", "n/a"));
        let m = CheckReport::aggregate("s", &[a, b]);
        let x = m.check("x").unwrap();
        assert_eq!((x.status, x.residual), (Status::Fail, 1e-6));
        assert_eq!(x.note.as_deref(), Some("1/2 passed"));
        assert_eq!(m.check("y").unwrap().status, Status::Skipped);
        assert_eq!(m.check("y").unwrap().note.as_deref(), Some("n/a"));
        assert_eq!(m.details["trials_passed"], 1);
    }

    #[test]
    fn empty_anchor_fails_validation() {
        let mut r = CheckReport::new("s");
        r.push(Check::measured("a", "", 0.0, 1e-9));
        assert!(r.validate().is_err());
    }

    #[test]
    fn elapsed_time_not_serialized() {
        let c = Check::timed("a", "x", 1.0, || 0.5);
        let s = serde_json::to_string(&c).unwrap();
        assert!(!s.contains("elapsed"));
        assert!(s.contains("\"status\":\"pass\""));
    }

    #[test]
    fn skipped_does_not_fail_report() {
        let mut r = CheckReport::new("s");
        r.push(Check::skipped("a", "x", "not applicable"));
        r.push(Check::measured("b", "x", 0.0, 0.0));
        assert!(r.passed());
        r.push(Check::condition("c", "x", false));
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
    }
}
