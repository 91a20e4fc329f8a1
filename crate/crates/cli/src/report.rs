//! Suite reports and their JSON and text renderings.
//!
//! JSON schema:
//!
//! ```text
//! { "suite": str, "status": "pass" | "fail",
//!   "checks": [ { "id": str, "anchor": str, "status": "pass" | "fail",
//!                 "residual": str, "elapsed_ms": int, "note"?: str } ] }
//! ```
//!
//! Every field except `elapsed_ms` is a deterministic function of the
//! command line.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// Canonical text of the residual; `0` when the identity holds.
    pub residual: String,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// What a check body returns; timing is added by [`Check::run`].
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub residual: String,
    pub note: Option<String>,
}

impl Outcome {
    pub fn new(pass: bool, residual: impl Into<String>) -> Self {
        Outcome { pass, residual: residual.into(), note: None }
    }

    /// Passes iff the residual prints as `0`.
    pub fn residual(residual: impl ToString) -> Self {
        let r = residual.to_string();
        Outcome { pass: r == "0", residual: r, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl Check {
    pub fn run(id: &str, anchor: &str, body: impl FnOnce() -> Outcome) -> Check {
        let start = Instant::now();
        let out = body();
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::from_bool(out.pass),
            residual: out.residual,
            elapsed_ms: start.elapsed().as_millis() as u64,
            note: out.note,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let status = Status::from_bool(checks.iter().all(Check::passed));
        SuiteReport { suite: suite.to_string(), status, checks }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let id_width = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let mark = if c.passed() { '✓' } else { '✗' };
            let pad = id_width - c.id.chars().count();
            let _ = writeln!(
                out,
                "  {mark} {}{}  {}  ({} ms)",
                c.id,
                " ".repeat(pad),
                c.anchor,
                c.elapsed_ms
            );
            if !c.passed() {
                let _ = writeln!(out, "      residual: {}", c.residual);
            }
            if let Some(n) = &c.note {
                let _ = writeln!(out, "      note: {n}");
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(
            out,
            "{passed}/{} checks pass: {}",
            self.checks.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_status_is_conjunction() {
        let ok = Check::run("a", "x", || Outcome::residual("0"));
        let bad = Check::run("b", "y", || Outcome::residual("X.Y"));
        assert!(SuiteReport::new("s", vec![ok.clone()]).passed());
        let r = SuiteReport::new("s", vec![ok, bad]);
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().contains("residual: X.Y"));
        let back: SuiteReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
