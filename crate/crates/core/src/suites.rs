//! Named verification suites, `check all`, and coefficient mutations.

use thiserror::Error;

use crate::algebra::{Coord, Element};
use crate::cyclotomic::q_power;
use crate::diffcalc::{coaction, differential, forms, partials, structure};
use crate::expr::{determinant, parse_element};
use crate::hopf;
use crate::repcheck;
use crate::report::Report;
use crate::rewrite::normal::Normalizer;
use crate::rewrite::tables::relations;
use crate::rewrite::{check_local_confluence, Case, Group, RuleSet};

const CITE_CENTER: &str = "determinant-centrality";
const CITE_CUBES: &str = "cube-centrality";
const CITE_CONFLUENCE: &str = "overlap-ambiguities";

/// Every suite `check` accepts, in the order `check all` runs them.
pub const SUITES: [&str; 14] = [
    "relations",
    "confluence",
    "hopf",
    "bialgebra",
    "d-axioms",
    "covariance",
    "coinvariance",
    "mc-forms",
    "mc-inverse",
    "sigma-tau",
    "mu-F-chi",
    "forms",
    "partials",
    "representations",
];

/// Suites that rely on data given for case I only.
pub const CASE_I_ONLY: [&str; 4] = ["sigma-tau", "mu-F-chi", "forms", "partials"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?} (expected one of: {list})", list = SUITES.join(", "))]
    Unknown(String),
    #[error("suite {0} needs case I: its closed forms are not available for case II")]
    CaseOnly(String),
}

pub fn run_suite(name: &str, max_len: usize, rs: &RuleSet) -> Result<Report, SuiteError> {
    if !SUITES.contains(&name) {
        return Err(SuiteError::Unknown(name.to_string()));
    }
    if rs.config().case == Case::II && CASE_I_ONLY.contains(&name) {
        return Err(SuiteError::CaseOnly(name.to_string()));
    }
    Ok(match name {
        "relations" => verify_relations(rs),
        "confluence" => verify_confluence(rs),
        "hopf" => hopf::verify_hopf_axioms(max_len, rs),
        "bialgebra" => hopf::verify_delta_homomorphism(rs),
        "d-axioms" => differential::verify_d_axioms(max_len, rs),
        "covariance" => coaction::verify_covariance(rs),
        "coinvariance" => coaction::verify_coinvariance(rs),
        "mc-forms" => forms::verify_mc_definition(rs),
        "mc-inverse" => forms::invert_mc(rs),
        "sigma-tau" => structure::verify_structure_homomorphisms(max_len, rs),
        "mu-F-chi" => structure::verify_f_and_chi(rs),
        "forms" => forms::verify_form_relations(rs),
        "partials" => partials::verify_partial_calculus(max_len, rs),
        "representations" => repcheck::verify_representations(rs.config()),
        _ => unreachable!("checked against SUITES"),
    })
}

/// All applicable suites folded into one report.  Under case II the case-I
/// suites are skipped and listed in `excluded`.
pub fn run_all(max_len: usize, rs: &RuleSet) -> Report {
    let mut all = Report::new("all", rs.config());
    for name in SUITES {
        match run_suite(name, max_len, rs) {
            Ok(r) => all.absorb(r),
            Err(SuiteError::CaseOnly(n)) => all.excluded.push(n),
            Err(e) => unreachable!("{e}"),
        }
    }
    all
}

/// Name of the first suite that reports a failure, running in `SUITES` order
/// and stopping there.
pub fn first_failing_suite(max_len: usize, rs: &RuleSet) -> Option<&'static str> {
    SUITES.into_iter().find(|name| match run_suite(name, max_len, rs) {
        Ok(r) => !r.passed(),
        Err(SuiteError::CaseOnly(_)) => false,
        Err(_) => true,
    })
}

/// Every tabulated relation normalizes to zero, the two forms of the
/// determinant agree, D and the generator cubes commute with the coordinates.
pub fn verify_relations(rs: &RuleSet) -> Report {
    let mut rep = Report::new("relations", rs.config());
    let mut nz = Normalizer::new(rs);
    let cfg = rs.config();
    let scope = cfg.scope();
    for &g in rs.groups() {
        let Some(table) = relations(g, cfg.case) else {
            continue;
        };
        let cite = g.cite(cfg.case);
        for r in table {
            let id = r.source(cfg.reading).to_string();
            let res = r
                .element(cfg.reading, &scope)
                .map_err(|e| e.to_string())
                .and_then(|e| nz.normalize(&e).map_err(|e| e.to_string()));
            match res {
                Ok(x) => rep.check(id, cite, &x),
                Err(e) => rep.error(id, cite, e),
            }
        }
    }
    let other = parse_element("d*a - b*g", &scope).expect("determinant parses");
    match nz.normalize(&(&determinant() - &other)) {
        Ok(x) => rep.check("a*d - q*b*g = d*a - b*g", CITE_CENTER, &x),
        Err(e) => rep.error("a*d - q*b*g = d*a - b*g", CITE_CENTER, e),
    }
    let mut central = vec![("D".to_string(), determinant(), CITE_CENTER)];
    for c in Coord::ALL {
        central.push((format!("{}^3", c.name()), Element::coord(c).pow(3), CITE_CUBES));
    }
    for (name, x, cite) in central {
        for c in Coord::ALL {
            let y = Element::coord(c);
            let id = format!("{name} commutes with {}", c.name());
            match nz.normalize(&(&(&x * &y) - &(&y * &x))) {
                Ok(r) => rep.check(id, cite, &r),
                Err(e) => rep.error(id, cite, e),
            }
        }
    }
    rep
}

/// Local confluence of the coordinate rules, of the first-order calculus,
/// and of the whole rule set.
pub fn verify_confluence(rs: &RuleSet) -> Report {
    let mut rep = Report::new("confluence", rs.config());
    let mut sets: Vec<(String, RuleSet)> = vec![
        ("Coord".into(), rs.restrict(&[Group::Coord])),
        (
            "Coord+CoordDiff1+Diff1Diff1".into(),
            rs.restrict(&[Group::Coord, Group::CoordDiff1, Group::Diff1Diff1]),
        ),
    ];
    let names: Vec<&str> = rs.groups().iter().map(|g| g.name()).collect();
    sets.push((names.join("+"), rs.clone()));
    for (name, set) in sets {
        let id = format!("overlaps of {name}");
        match check_local_confluence(&set) {
            Ok(c) => {
                let shown: Vec<String> = c
                    .failures
                    .iter()
                    .take(5)
                    .map(|o| format!("{}: {}", o.word, o.residual))
                    .collect();
                let detail = format!(
                    "{} of {} overlaps fail; {}",
                    c.failures.len(),
                    c.checked,
                    shown.join("; ")
                );
                rep.check_bool(id, CITE_CONFLUENCE, c.is_confluent(), detail);
            }
            Err(e) => rep.error(id, CITE_CONFLUENCE, e),
        }
    }
    rep
}

/// One rule with one right-hand coefficient multiplied by q.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub description: String,
    pub rules: RuleSet,
}

/// Up to `count` single-coefficient mutations spread evenly over all
/// (rule, term) pairs of the rule set.
pub fn coefficient_mutations(rs: &RuleSet, count: usize) -> Vec<Mutation> {
    let mut sites = Vec::new();
    for r in rs.rules() {
        for w in r.rhs.words() {
            sites.push((r.lhs, w.clone()));
        }
    }
    if sites.is_empty() || count == 0 {
        return Vec::new();
    }
    let step = (sites.len() as f64 / count as f64).max(1.0);
    let mut out = Vec::new();
    let mut pos = 0.0;
    while (pos as usize) < sites.len() && out.len() < count {
        let (key, w) = &sites[pos as usize];
        pos += step;
        let rule = rs.rule(key.0, key.1).expect("site comes from a rule");
        let mut rhs = Element::zero();
        for (v, c) in rule.rhs.terms() {
            let c = if v == w { c * &q_power(1) } else { c.clone() };
            rhs.add_term(v.clone(), c);
        }
        let description = format!(
            "{} -> {} (coefficient of {w} times q)",
            rule.lhs_word(),
            rhs.render()
        );
        if let Ok(rules) = rs.with_rhs(*key, rhs) {
            out.push(Mutation { description, rules });
        }
    }
    out
}
