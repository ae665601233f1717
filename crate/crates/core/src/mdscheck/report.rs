use std::fmt;
use std::time::{Duration, Instant};

use crate::codes::SetTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one property check. A failing report always carries the
/// offending tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<SetTuple>,
    /// Tuples (or other test units) examined.
    pub tuples: u64,
    pub elapsed: Duration,
    /// Additional `key=value` fields, printed after the standard ones.
    pub extra: Vec<(String, String)>,
}

impl CheckReport {
    pub(crate) fn new(property: &str, tuples: u64, start: Instant) -> Self {
        CheckReport {
            property: property.to_string(),
            verdict: Verdict::Pass,
            witness: None,
            tuples,
            elapsed: start.elapsed(),
            extra: Vec::new(),
        }
    }

    pub(crate) fn fail(&mut self, witness: SetTuple) {
        self.verdict = Verdict::Fail;
        self.witness = Some(witness);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn extra(&self, key: &str) -> Option<&str> {
        self.extra.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `property=… verdict=… tuples=… time_ms=…` followed by the witness and
    /// extra fields. With `deterministic` the time is printed as 0 so that
    /// reports compare byte for byte.
    pub fn to_line(&self, deterministic: bool) -> String {
        let ms = if deterministic { 0 } else { self.elapsed.as_millis() };
        let mut line = format!(
            "property={} verdict={} tuples={} time_ms={ms}",
            self.property, self.verdict, self.tuples
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness={w}"));
        }
        for (k, v) in &self.extra {
            line.push_str(&format!(" {k}={v}"));
        }
        line
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line(false))
    }
}
