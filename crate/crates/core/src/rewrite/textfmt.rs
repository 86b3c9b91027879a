//! Plain-text rule tables.
//!
//! ```text
//! # table Coord coordinate-relations
//! g*a -> -1-w a*g
//! d*a -> 1 a*d + 1-w b*g
//! ```
//!
//! One rule per line, `LHS -> coeff WORD [+ coeff WORD ...]` with
//! coefficients in canonical `a+b*w` form and `0` for an empty right side.
//! A `# table GROUP [CITE]` header opens a group; other `#` lines are
//! comments.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::algebra::{Element, Word};
use crate::cyclotomic::CycNum;

use super::config::{CalculusConfig, Group};
use super::ruleset::{RewriteRule, RuleSet};
use super::RewriteError;

pub fn serialize(rs: &RuleSet) -> String {
    let case = rs.config().case;
    let mut out = String::new();
    for &g in rs.groups() {
        let _ = writeln!(out, "# table {} {}", g.name(), g.cite(case));
        for r in rs.rules_in(g) {
            let rhs = if r.rhs.is_zero() {
                "0".to_string()
            } else {
                r.rhs
                    .terms()
                    .map(|(w, c)| format!("{c} {w}"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let _ = writeln!(out, "{} -> {rhs}", r.lhs_word());
        }
    }
    out
}

fn table_err(line: usize, msg: impl std::fmt::Display) -> RewriteError {
    RewriteError::Table(format!("line {line}: {msg}"))
}

fn parse_rhs(text: &str, line: usize) -> Result<Element, RewriteError> {
    let text = text.trim();
    if text == "0" {
        return Ok(Element::zero());
    }
    let mut e = Element::zero();
    for term in text.split(" + ") {
        let (c, w) = term
            .trim()
            .split_once(' ')
            .ok_or_else(|| table_err(line, format!("term {term:?} needs `coeff WORD`")))?;
        let c: CycNum = c
            .parse()
            .map_err(|err| table_err(line, format!("coefficient {c:?}: {err}")))?;
        let w = Word::parse(w).ok_or_else(|| table_err(line, format!("bad word {w:?}")))?;
        e.add_term(w, c);
    }
    Ok(e)
}

/// Parse a rule file into (groups, rules).
pub fn parse_tables(text: &str) -> Result<(Vec<Group>, Vec<RewriteRule>), RewriteError> {
    let mut groups = Vec::new();
    let mut rules = Vec::new();
    let mut current = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            let mut parts = rest.split_whitespace();
            if parts.next() == Some("table") {
                let name = parts
                    .next()
                    .ok_or_else(|| table_err(line, "table header without a group"))?;
                let g = Group::from_name(name)
                    .ok_or_else(|| table_err(line, format!("unknown group {name:?}")))?;
                groups.push(g);
                current = Some(g);
            }
            continue;
        }
        let group = current.ok_or_else(|| table_err(line, "rule before any `# table` header"))?;
        let (lhs, rhs) = t
            .split_once("->")
            .ok_or_else(|| table_err(line, "expected `LHS -> RHS`"))?;
        let lw = Word::parse(lhs).ok_or_else(|| table_err(line, format!("bad word {lhs:?}")))?;
        if lw.len() != 2 {
            return Err(table_err(line, "left side must be a two-letter word"));
        }
        rules.push(RewriteRule {
            lhs: (lw.0[0], lw.0[1]),
            rhs: parse_rhs(rhs, line)?,
            group,
        });
    }
    Ok((groups, rules))
}

pub fn parse_ruleset(text: &str, config: CalculusConfig) -> Result<RuleSet, RewriteError> {
    let (groups, rules) = parse_tables(text)?;
    config.check_groups(&groups)?;
    RuleSet::from_rules(config, groups, rules)
}

/// Replace every group present in `text` and keep the other groups of `base`.
pub fn override_tables(base: &RuleSet, text: &str) -> Result<RuleSet, RewriteError> {
    let (groups, rules) = parse_tables(text)?;
    base.config().check_groups(&groups)?;
    let replaced: BTreeSet<Group> = groups.iter().copied().collect();
    let kept = base
        .rules()
        .filter(|r| !replaced.contains(&r.group))
        .cloned();
    let all_groups: BTreeSet<Group> = base.groups().iter().copied().chain(groups).collect();
    RuleSet::from_rules(*base.config(), all_groups, kept.chain(rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::ruleset::standard_ruleset;

    #[test]
    fn round_trip() {
        for cfg in [CalculusConfig::standard(), CalculusConfig::alternate()] {
            let rs = standard_ruleset(cfg).unwrap();
            let text = serialize(&rs);
            let back = parse_ruleset(&text, cfg).unwrap();
            assert_eq!(back, rs);
        }
    }

    #[test]
    fn serialized_line_shape() {
        let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
        let text = serialize(&rs);
        assert!(text.contains("# table Coord coordinate-relations"));
        assert!(text.contains("d*a -> 1 a*d + 1-w b*g"), "{text}");
    }

    #[test]
    fn override_replaces_one_group() {
        let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
        let text = "# table Coord\n\
                    b*a -> 1 a*b\ng*a -> w a*g\ng*b -> 1 b*g\nd*a -> 1 a*d\nd*b -> 1 b*d\nd*g -> w g*d\n";
        let o = override_tables(&rs, text).unwrap();
        assert_eq!(o.len(), rs.len());
        assert_ne!(o, rs);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_tables("# table Coord\nb*a => a*b\n").unwrap_err();
        assert!(e.to_string().contains("line 2"));
        assert!(parse_tables("b*a -> 1 a*b").is_err());
        assert!(parse_tables("# table Nope\n").is_err());
        assert!(parse_tables("# table Coord\nb*a -> x a*b\n").is_err());
    }
}
