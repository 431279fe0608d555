use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{CheckLayer, Format, Suite, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    AmbiguousReading,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::AmbiguousReading => "ambiguous-reading",
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Outcome under one interpretation of an ambiguous symbol.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReadingStatus {
    pub reading: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    pub layer: CheckLayer,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub readings: Vec<ReadingStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, suite: Suite, layer: CheckLayer, status: Status) -> Self {
        CheckRecord {
            id: id.into(),
            suite,
            layer,
            params: BTreeMap::new(),
            status,
            witness: None,
            readings: Vec::new(),
            note: None,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    /// Sets the witness, kept only on failure.
    pub fn witness(mut self, w: impl Into<String>) -> Self {
        if self.status != Status::Pass {
            self.witness = Some(w.into());
        }
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn readings(mut self, r: Vec<ReadingStatus>) -> Self {
        self.readings = r;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    #[serde(rename = "ambiguous-reading")]
    pub ambiguous_reading: usize,
}

impl Summary {
    pub fn of(checks: &[CheckRecord]) -> Summary {
        let mut s = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
                Status::AmbiguousReading => s.ambiguous_reading += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub version: String,
    pub config: SuiteConfig,
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(config: SuiteConfig, conventions: BTreeMap<String, String>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = Summary::of(&checks);
        CheckReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            conventions,
            checks,
            summary,
        }
    }

    /// Exit code: 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }
}

pub fn emit_report(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(r: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dygl {}", r.version);
    for (k, v) in &r.conventions {
        let _ = writeln!(out, "# {k}: {v}");
    }
    for c in &r.checks {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{:<17} {} [{}]", c.status.name().to_uppercase(), c.id, c.layer);
        if !params.is_empty() {
            let _ = write!(line, " {}", params.join(" "));
        }
        if !c.readings.is_empty() {
            let rs: Vec<String> = c.readings.iter().map(|x| format!("{}={}", x.reading, x.status.name())).collect();
            let _ = write!(line, " readings: {}", rs.join(", "));
        }
        if let Some(n) = &c.note {
            let _ = write!(line, " ({n})");
        }
        if let Some(w) = &c.witness {
            let _ = write!(line, " witness: {w}");
        }
        let _ = writeln!(out, "{line}");
    }
    let s = &r.summary;
    let _ = writeln!(
        out,
        "summary: {} checks, {} pass, {} fail, {} inconclusive, {} ambiguous-reading",
        s.total, s.pass, s.fail, s.inconclusive, s.ambiguous_reading
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = CheckReport::new(SuiteConfig::default(), BTreeMap::new(), Vec::new());
        let v: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        assert_eq!(keys, ["version", "config", "conventions", "checks", "summary"]);
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert_eq!(v["summary"]["total"], 0);
        assert_eq!(v["summary"]["fail"], 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn records_sorted_and_witness_only_on_failure() {
        let a = CheckRecord::new("b", Suite::Ybe, CheckLayer::Exact, Status::Pass).witness("x");
        let b = CheckRecord::new("a", Suite::Ybe, CheckLayer::Exact, Status::Fail).witness("y");
        let r = CheckReport::new(SuiteConfig::default(), BTreeMap::new(), vec![a, b]);
        assert_eq!(r.checks[0].id, "a");
        assert_eq!(r.checks[0].witness.as_deref(), Some("y"));
        assert!(r.checks[1].witness.is_none());
        assert_eq!(r.exit_code(), 1);
    }
}
