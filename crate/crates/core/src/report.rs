//! Structured pass/fail records.

use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Advisory records are reported but do not affect the verdict.
    pub mandatory: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    /// Wall time; excluded from [`VerificationReport::golden_json`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
            passed: true,
            elapsed_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.push(name, passed, true, detail)
    }

    pub fn advisory(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.push(name, passed, false, detail)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, mandatory: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckRecord {
            name: name.into(),
            passed,
            mandatory,
            detail: detail.into(),
        });
        self.passed = self.checks.iter().all(|c| c.passed || !c.mandatory);
        passed
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c.name, c.passed, c.mandatory, c.detail);
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.mandatory && !c.passed)
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed_ms = Some(d.as_secs_f64() * 1000.0);
    }

    /// Deterministic JSON without timing.
    pub fn golden_json(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = None;
        serde_json::to_string_pretty(&copy).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_ignores_advisory_records() {
        let mut r = VerificationReport::new("x");
        r.check("a", true, "");
        r.advisory("b", false, "");
        assert!(r.passed);
        r.check("c", false, "bad");
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn golden_json_drops_timing() {
        let mut r = VerificationReport::new("x");
        r.check("a", true, "ok");
        let before = r.golden_json();
        r.set_elapsed(Duration::from_millis(12));
        assert_eq!(r.golden_json(), before);
        assert!(!before.contains("elapsed"));
    }
}
