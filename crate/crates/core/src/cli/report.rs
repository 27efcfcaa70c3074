//! Versioned JSON run reports.
//!
//! Everything except `metadata.timestamp` is a pure function of the inputs, so two runs
//! of the same configuration produce byte-identical reports when no timestamp is requested.

use std::fmt;

use serde::Serialize;

pub const SCHEMA: &str = "cmcgk-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// A negative control that failed as it should.
    Xfail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Xfail => "XFAIL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// Passes when `residual <= tolerance`.
    Le,
    /// Passes when `residual >= tolerance`.
    Ge,
}

/// One named residual against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` when the quantity could not be computed or was not finite.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub expect_fail: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn build(name: &str, residual: f64, tolerance: f64, comparison: Comparison) -> Self {
        let mut c = Self {
            name: name.to_string(),
            residual: residual.is_finite().then_some(residual),
            tolerance,
            comparison,
            expect_fail: false,
            status: Status::Fail,
            note: None,
        };
        c.status = c.judge();
        c
    }

    pub fn le(name: &str, residual: f64, tolerance: f64) -> Self {
        Self::build(name, residual, tolerance, Comparison::Le)
    }

    pub fn ge(name: &str, residual: f64, tolerance: f64) -> Self {
        Self::build(name, residual, tolerance, Comparison::Ge)
    }

    /// A check that could not be evaluated.
    pub fn aborted(name: &str, tolerance: f64, why: impl Into<String>) -> Self {
        Self::build(name, f64::NAN, tolerance, Comparison::Le).with_note(why)
    }

    /// Marks a negative control: failing the comparison is the expected outcome.
    pub fn expecting_failure(mut self) -> Self {
        self.expect_fail = true;
        self.status = self.judge();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn within(&self) -> bool {
        match (self.residual, self.comparison) {
            (Some(r), Comparison::Le) => r <= self.tolerance,
            (Some(r), Comparison::Ge) => r >= self.tolerance,
            (None, _) => false,
        }
    }

    fn judge(&self) -> Status {
        match (self.within(), self.expect_fail) {
            (true, false) => Status::Pass,
            (false, true) => Status::Xfail,
            _ => Status::Fail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Metadata {
    pub tool_version: String,
    pub command: String,
    /// Config path or suite name.
    pub source: String,
    pub kappa: Option<f64>,
    pub tau: Option<f64>,
    pub grid: Option<[usize; 2]>,
    /// Seconds since the Unix epoch; only present when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub metadata: Metadata,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, source: &str) -> Self {
        Self {
            schema: SCHEMA,
            metadata: Metadata {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                command: command.to_string(),
                source: source.to_string(),
                ..Metadata::default()
            },
            status: Status::Pass,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.status = if self.checks.iter().all(Check::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn stamp(&mut self) {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.metadata.timestamp = Some(now);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    /// One line per check, for terminals.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let r = c.residual.map_or("n/a".to_string(), |r| format!("{r:.3e}"));
            let op = match c.comparison {
                Comparison::Le => "<=",
                Comparison::Ge => ">=",
            };
            s.push_str(&format!("{:<5} {:<28} {r} {op} {:.1e}", c.status, c.name, c.tolerance));
            if let Some(n) = &c.note {
                s.push_str(&format!("  ({n})"));
            }
            s.push('\n');
        }
        s.push_str(&format!("{} {} checks\n", self.status, self.checks.len()));
        s
    }
}
