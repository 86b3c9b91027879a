//! The binding logic in plain Rust, so it can be tested without Python.

use gradedq::algebra::{Coord, Element};
use gradedq::diffcalc::differential::differential_n;
use gradedq::diffcalc::partials::partial_derivatives;
use gradedq::diffcalc::structure::{structure_matrix, Kind};
use gradedq::expr::parse_element;
use gradedq::rewrite::{normalize, standard_ruleset, CalculusConfig, Case, RuleSet, P1, P2};
use gradedq::suites::{run_all, run_suite};

fn msg<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub struct Session {
    rs: RuleSet,
}

impl Session {
    pub fn new(case: &str, p1: &str, p2: &str, literal: bool) -> Result<Self, String> {
        let case: Case = case.parse()?;
        let p1: P1 = p1.parse()?;
        let p2: P2 = p2.parse()?;
        let mut cfg = CalculusConfig::new(case, p1, p2);
        if literal {
            cfg = cfg.literal();
        }
        Ok(Session {
            rs: standard_ruleset(cfg).map_err(msg)?,
        })
    }

    fn parse(&self, expr: &str) -> Result<Element, String> {
        parse_element(expr, &self.rs.config().scope()).map_err(msg)
    }

    fn normal(&self, expr: &str) -> Result<Element, String> {
        normalize(&self.parse(expr)?, &self.rs).map_err(msg)
    }

    pub fn describe(&self) -> String {
        self.rs.config().describe()
    }

    pub fn normalize(&self, expr: &str) -> Result<String, String> {
        Ok(self.normal(expr)?.render())
    }

    pub fn diff(&self, expr: &str, n: usize) -> Result<String, String> {
        Ok(differential_n(&self.parse(expr)?, n, &self.rs).map_err(msg)?.render())
    }

    /// (generator name, ∂ f) in the order a, b, g, d.
    pub fn partials(&self, expr: &str) -> Result<Vec<(&'static str, String)>, String> {
        let parts = partial_derivatives(&self.normal(expr)?, &self.rs).map_err(msg)?;
        Ok(Coord::ALL.iter().map(|c| c.name()).zip(parts.iter().map(Element::render)).collect())
    }

    pub fn matrix(&self, kind: &str, expr: &str) -> Result<Vec<Vec<String>>, String> {
        let k = Kind::from_name(kind).ok_or_else(|| format!("unknown matrix kind {kind:?}"))?;
        let m = structure_matrix(k, &self.normal(expr)?, &self.rs).map_err(msg)?;
        Ok(m.iter().map(|r| r.iter().map(Element::render).collect()).collect())
    }

    /// (passed, report as JSON text) for a suite or "all".
    pub fn check(&self, suite: &str, max_len: usize) -> Result<(bool, String), String> {
        let rep = if suite == "all" {
            run_all(max_len, &self.rs)
        } else {
            run_suite(suite, max_len, &self.rs).map_err(msg)?
        };
        Ok((rep.passed(), rep.to_json()))
    }
}
