//! Verification reports shared by every suite.

use std::fmt::Write;

use serde::Serialize;

use crate::algebra::Element;
use crate::rewrite::config::CalculusConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The identity as printed fails and a registered correction passes.
    Erratum,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Erratum => "erratum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub id: String,
    pub cite: String,
    pub status: Status,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub case: String,
    pub p1: String,
    pub p2: String,
}

impl From<&CalculusConfig> for ConfigEcho {
    fn from(c: &CalculusConfig) -> Self {
        ConfigEcho {
            case: c.case.to_string(),
            p1: c.p1.name().to_string(),
            p2: c.p2.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub erratum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: ConfigEcho,
    pub entries: Vec<Entry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, config: &CalculusConfig) -> Report {
        Report {
            suite: suite.to_string(),
            config: config.into(),
            entries: Vec::new(),
            excluded: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, cite: &str, status: Status, residual: impl Into<String>) {
        match status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Erratum => self.summary.erratum += 1,
        }
        self.entries.push(Entry {
            id: id.into(),
            cite: cite.to_string(),
            status,
            residual: residual.into(),
        });
    }

    /// Pass iff `residual` is zero.
    pub fn check(&mut self, id: impl Into<String>, cite: &str, residual: &Element) {
        let status = if residual.is_zero() { Status::Pass } else { Status::Fail };
        self.push(id, cite, status, residual.render());
    }

    pub fn check_bool(&mut self, id: impl Into<String>, cite: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        let detail = if ok { "0".to_string() } else { detail.into() };
        self.push(id, cite, status, detail);
    }

    /// Record a checker error (for instance an unreducible word) as a failure.
    pub fn error(&mut self, id: impl Into<String>, cite: &str, err: impl std::fmt::Display) {
        self.push(id, cite, Status::Fail, format!("error: {err}"));
    }

    /// Fold another report in, prefixing its ids with its suite name.
    pub fn absorb(&mut self, other: Report) {
        for e in other.entries {
            self.push(format!("{}:{}", other.suite, e.id), &e.cite, e.status, e.residual);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "suite {} (case {}, P1={}, P2={})", self.suite, c.case, c.p1, c.p2);
        if !self.excluded.is_empty() {
            let _ = writeln!(out, "excluded: {}", self.excluded.join(", "));
        }
        for e in &self.entries {
            let _ = write!(out, "  [{:7}] {}  ({})", e.status.as_str(), e.id, e.cite);
            if e.status != Status::Pass {
                let _ = write!(out, "\n            residual: {}", e.residual);
            }
            out.push('\n');
        }
        let s = self.summary;
        let _ = writeln!(out, "pass {}, fail {}, erratum {}", s.pass, s.fail, s.erratum);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_json_shape() {
        let mut r = Report::new("demo", &CalculusConfig::standard());
        r.check("zero", "coordinate-relations", &Element::zero());
        r.check("one", "coordinate-relations", &Element::one());
        r.push("typo", "form-commutation", Status::Erratum, "x");
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, erratum: 1 });
        assert!(!r.passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["config"]["p1"], "q2");
        assert_eq!(v["entries"][1]["status"], "fail");
        assert_eq!(v["entries"][1]["residual"], "1");
        assert_eq!(v["summary"]["fail"], 1);
        assert!(v.get("excluded").is_none());
        assert_eq!(r.to_json(), r.clone().to_json());
    }

    #[test]
    fn absorb_prefixes_ids() {
        let cfg = CalculusConfig::standard();
        let mut inner = Report::new("hopf", &cfg);
        inner.check("x", "c", &Element::zero());
        let mut all = Report::new("all", &cfg);
        all.absorb(inner);
        assert_eq!(all.entries[0].id, "hopf:x");
        assert!(all.passed());
    }
}
