//! Machine-readable suite reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one check. A `Fail` always carries a counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail { witness: Value },
    Inconclusive { limit: String },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail { .. } => "FAIL",
            Status::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    #[serde(flatten)]
    pub status: Status,
    /// Deterministic description of what was computed.
    pub detail: String,
    pub seed: Option<u64>,
    /// Wall-clock milliseconds; excluded from deterministic output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub millis: Option<u64>,
}

impl Check {
    pub fn new(id: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status,
            detail: detail.into(),
            seed: None,
            millis: None,
        }
    }

    pub fn pass(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(id, Status::Pass, detail)
    }

    pub fn fail(id: impl Into<String>, witness: Value, detail: impl Into<String>) -> Self {
        Self::new(id, Status::Fail { witness }, detail)
    }

    pub fn inconclusive(
        id: impl Into<String>,
        limit: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Self::new(
            id,
            Status::Inconclusive {
                limit: limit.into(),
            },
            detail,
        )
    }

    /// Pass if `ok`, otherwise Fail with `witness`.
    pub fn from_bool(
        id: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> Value,
        detail: impl Into<String>,
    ) -> Self {
        if ok {
            Self::pass(id, detail)
        } else {
            Self::fail(id, witness(), detail)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f` and records its wall-clock time on the returned check.
pub fn timed(f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut c = f();
    c.millis = Some(start.elapsed().as_millis() as u64);
    c
}

/// Aggregate verdict of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        SuiteReport {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    /// Any Fail dominates; otherwise any Inconclusive; otherwise Pass.
    pub fn verdict(&self) -> Verdict {
        if self
            .checks
            .iter()
            .any(|c| matches!(c.status, Status::Fail { .. }))
        {
            Verdict::Fail
        } else if self
            .checks
            .iter()
            .any(|c| matches!(c.status, Status::Inconclusive { .. }))
        {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Copy with timings removed, so equal inputs give equal reports.
    pub fn deterministic(&self) -> SuiteReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = None;
        }
        r
    }

    pub fn to_json(&self, timings: bool) -> String {
        let r = if timings {
            self.clone()
        } else {
            self.deterministic()
        };
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }

    /// One line per check: `STATUS id: detail`.
    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} seed {}\n", self.suite, self.seed);
        for c in &self.checks {
            s.push_str(&format!("{} {}: {}", c.status.label(), c.id, c.detail));
            if let Status::Inconclusive { limit } = &c.status {
                s.push_str(&format!(" [{limit}]"));
            }
            if let Status::Fail { witness } = &c.status {
                s.push_str(&format!(" witness={witness}"));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdict_precedence_and_round_trip() {
        let mut r = SuiteReport::new("t", 1);
        r.push(Check::pass("a", "ok"));
        assert_eq!(r.verdict(), Verdict::Pass);
        r.push(Check::inconclusive("b", "pairs", "budget"));
        assert_eq!(r.verdict(), Verdict::Inconclusive);
        r.push(timed(|| Check::fail("c", json!({"x": 1}), "bad")));
        assert_eq!(r.verdict(), Verdict::Fail);
        let back: SuiteReport = serde_json::from_str(&r.to_json(true)).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_json(false).contains("millis"));
    }
}
