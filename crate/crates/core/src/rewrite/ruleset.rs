use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{word_grade, Coord, Element, Generator, Word};
use crate::diffcalc::closed_forms;

use super::config::{CalculusConfig, Group, Reading};
use super::tables::relations;
use super::RewriteError;

pub type Key = (Generator, Generator);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Key,
    pub rhs: Element,
    pub group: Group,
}

impl RewriteRule {
    pub fn lhs_word(&self) -> Word {
        Word(vec![self.lhs.0, self.lhs.1])
    }

    /// The relation `lhs − rhs` that this rule orients.
    pub fn relation(&self) -> Element {
        &Element::word(self.lhs_word()) - &self.rhs
    }

    fn validate(&self) -> Result<(), RewriteError> {
        let lhs = self.lhs_word();
        let g = word_grade(&lhs);
        for w in self.rhs.words() {
            if w.len() != 2 || *w >= lhs {
                return Err(RewriteError::Table(format!(
                    "rule {lhs}: right-hand word {w} is not a smaller word of length 2"
                )));
            }
            if word_grade(w) != g {
                return Err(RewriteError::Table(format!(
                    "rule {lhs}: right-hand word {w} has grade {} but the left side has grade {g}",
                    word_grade(w)
                )));
            }
        }
        Ok(())
    }
}

/// Orient a relation R = 0 by its leading word: lead ↦ −(R − c·lead)/c.
/// Returns `None` for an identically vanishing relation.
pub fn orient(relation: &Element, group: Group) -> Result<Option<RewriteRule>, RewriteError> {
    let Some((lead, c)) = relation.leading() else {
        return Ok(None);
    };
    if lead.len() != 2 {
        return Err(RewriteError::Table(format!(
            "relation {relation} has leading word {lead} of length {}",
            lead.len()
        )));
    }
    let lead = lead.clone();
    let inv = c.inv().expect("leading coefficient is nonzero");
    let mut rhs = Element::zero();
    for (w, v) in relation.terms() {
        if *w != lead {
            rhs.add_term(w.clone(), -(v * &inv));
        }
    }
    let rule = RewriteRule {
        lhs: (lead.0[0], lead.0[1]),
        rhs,
        group,
    };
    rule.validate()?;
    Ok(Some(rule))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    config: CalculusConfig,
    rules: BTreeMap<Key, RewriteRule>,
    groups: BTreeSet<Group>,
}

impl RuleSet {
    /// Assemble from explicit rules.  Within one group a key may appear only
    /// once; across groups the higher-priority group wins.
    pub fn from_rules(
        config: CalculusConfig,
        groups: impl IntoIterator<Item = Group>,
        rules: impl IntoIterator<Item = RewriteRule>,
    ) -> Result<RuleSet, RewriteError> {
        let mut map: BTreeMap<Key, RewriteRule> = BTreeMap::new();
        for r in rules {
            r.validate()?;
            match map.get(&r.lhs) {
                Some(old) if old.group == r.group => {
                    return Err(RewriteError::Table(format!(
                        "two rules for {} in group {}",
                        r.lhs_word(),
                        r.group.name()
                    )));
                }
                Some(old) if old.group < r.group => {}
                _ => {
                    map.insert(r.lhs, r);
                }
            }
        }
        Ok(RuleSet {
            config,
            rules: map,
            groups: groups.into_iter().collect(),
        })
    }

    pub fn config(&self) -> &CalculusConfig {
        &self.config
    }

    pub fn groups(&self) -> &BTreeSet<Group> {
        &self.groups
    }

    pub fn has_group(&self, g: Group) -> bool {
        self.groups.contains(&g)
    }

    pub fn rule(&self, x: Generator, y: Generator) -> Option<&RewriteRule> {
        self.rules.get(&(x, y))
    }

    pub fn rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.values()
    }

    pub fn rules_in(&self, g: Group) -> impl Iterator<Item = &RewriteRule> {
        self.rules.values().filter(move |r| r.group == g)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The rules of the given groups only.
    pub fn restrict(&self, groups: &[Group]) -> RuleSet {
        RuleSet {
            config: self.config,
            rules: self
                .rules
                .iter()
                .filter(|(_, r)| groups.contains(&r.group))
                .map(|(k, r)| (*k, r.clone()))
                .collect(),
            groups: groups.iter().copied().filter(|g| self.groups.contains(g)).collect(),
        }
    }

    /// A copy with one rule's right-hand side replaced.
    pub fn with_rhs(&self, key: Key, rhs: Element) -> Result<RuleSet, RewriteError> {
        let mut out = self.clone();
        let rule = out
            .rules
            .get_mut(&key)
            .ok_or_else(|| RewriteError::Table(format!("no rule for {}*{}", key.0, key.1)))?;
        rule.rhs = rhs;
        rule.validate()?;
        Ok(out)
    }
}

fn central_rules() -> Vec<RewriteRule> {
    Coord::ALL
        .into_iter()
        .map(|c| RewriteRule {
            lhs: (Generator::C(c), Generator::Z),
            rhs: Element::word(Word(vec![Generator::Z, Generator::C(c)])),
            group: Group::Central,
        })
        .collect()
}

/// w_i·f = q^{p(f)p(w_i)} Σ_j μ_ij(f)·w_j from the closed-form μ matrices.
fn form_coord_rules(config: &CalculusConfig) -> Result<Vec<RewriteRule>, RewriteError> {
    let mut out = Vec::new();
    for f in Coord::ALL {
        let mu = closed_forms::mu(f, config)?;
        for (i, wi) in crate::algebra::Form::ALL.into_iter().enumerate() {
            let factor = crate::cyclotomic::q_power(f.grade() as i64 * wi.grade() as i64);
            let mut rhs = Element::zero();
            for (j, wj) in crate::algebra::Form::ALL.into_iter().enumerate() {
                let e = &mu[i][j] * &Element::gen(Generator::W(wj));
                rhs.add_scaled(&e, &factor);
            }
            out.push(RewriteRule {
                lhs: (Generator::W(wi), Generator::C(f)),
                rhs,
                group: Group::FormCoord,
            });
        }
    }
    Ok(out)
}

/// Compile the requested groups for a configuration.
pub fn build_ruleset(config: CalculusConfig, groups: &[Group]) -> Result<RuleSet, RewriteError> {
    config.check_groups(groups)?;
    let scope = config.scope();
    let mut rules = Vec::new();
    for &g in groups {
        match g {
            Group::Central => rules.extend(central_rules()),
            Group::FormCoord => rules.extend(form_coord_rules(&config)?),
            _ => {
                let table = relations(g, config.case).expect("tabulated group");
                // Form rules always use the shipped reading: the printed
                // w3*w4 line cannot be oriented (it mixes grades).
                let reading = if g == Group::FormForm {
                    Reading::Corrected
                } else {
                    config.reading
                };
                for r in table {
                    let e = r.element(reading, &scope)?;
                    if let Some(rule) = orient(&e, g)? {
                        rules.push(rule);
                    }
                }
            }
        }
    }
    RuleSet::from_rules(config, groups.iter().copied(), rules)
}

/// Shortcut for the full second-order set of a configuration (first-order
/// set for configurations without a second-order calculus).
pub fn standard_ruleset(config: CalculusConfig) -> Result<RuleSet, RewriteError> {
    if config.admits_second_order() {
        build_ruleset(config, &Group::second_order())
    } else {
        build_ruleset(config, &Group::first_order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{q_power, CycNum};
    use crate::expr::{parse_element, Scope};

    fn el(s: &str) -> Element {
        parse_element(s, &Scope::default()).unwrap()
    }

    fn gens(s: &str) -> Key {
        let w = Word::parse(s).unwrap();
        (w.0[0], w.0[1])
    }

    #[test]
    fn coord_rule_for_da() {
        let rs = build_ruleset(CalculusConfig::standard(), &[Group::Coord]).unwrap();
        let r = rs.rule(Generator::C(Coord::D), Generator::C(Coord::A)).unwrap();
        assert_eq!(r.rhs, el("a*d - (q-1)*b*g"));
        assert_eq!(rs.len(), 6);
    }

    #[test]
    fn diff1sq_vacuous_at_standard_point() {
        let rs = build_ruleset(CalculusConfig::standard(), &[Group::Diff1Sq]).unwrap();
        assert!(rs.is_empty());
    }

    #[test]
    fn diff1sq_at_alternate_point() {
        let rs = build_ruleset(CalculusConfig::alternate(), &[Group::Diff1Sq]).unwrap();
        assert_eq!(rs.len(), 10);
        let r = rs.rule(Generator::D1(Coord::A), Generator::D1(Coord::A)).unwrap();
        // (q²−q)/(q²−1)
        let c = (q_power(2) - q_power(1)) * (q_power(2) - CycNum::int(1)).inv().unwrap();
        assert_eq!(r.rhs, el("d2a*a").scale(&c));
    }

    #[test]
    fn case_two_rejects_second_order() {
        let cfg = CalculusConfig::new(
            crate::rewrite::config::Case::II,
            crate::rewrite::config::P1::Q2,
            crate::rewrite::config::P2::One,
        );
        assert!(matches!(
            build_ruleset(cfg, &[Group::CoordDiff2]),
            Err(RewriteError::Config(_))
        ));
        assert!(build_ruleset(cfg, &[Group::FormForm]).is_err());
        assert!(build_ruleset(cfg, &Group::first_order()).is_ok());
    }

    #[test]
    fn second_order_needs_admissible_point() {
        let cfg = CalculusConfig::new(
            crate::rewrite::config::Case::I,
            crate::rewrite::config::P1::Q,
            crate::rewrite::config::P2::One,
        );
        assert!(build_ruleset(cfg, &[Group::Diff2Diff2]).is_err());
    }

    #[test]
    fn orientation_invariants() {
        for cfg in [CalculusConfig::standard(), CalculusConfig::alternate()] {
            let mut groups = Group::second_order();
            groups.extend([Group::FormCoord, Group::FormForm]);
            let rs = build_ruleset(cfg, &groups).unwrap();
            for r in rs.rules() {
                let lhs = r.lhs_word();
                for w in r.rhs.words() {
                    assert!(*w < lhs);
                    assert_eq!(word_grade(w), word_grade(&lhs));
                }
            }
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        let cfg = CalculusConfig::standard();
        // grade mismatch
        assert!(orient(&el("b*a - a*a"), Group::Coord).is_err());
        // leading word of length 3
        assert!(orient(&el("a*b*g - b"), Group::Coord).is_err());
        assert_eq!(orient(&Element::zero(), Group::Coord).unwrap(), None);
        let r = orient(&el("b*a - a*b"), Group::Coord).unwrap().unwrap();
        let dup = RuleSet::from_rules(cfg, [Group::Coord], [r.clone(), r.clone()]);
        assert!(dup.is_err());
        let rs = RuleSet::from_rules(cfg, [Group::Coord], [r]).unwrap();
        assert!(rs.with_rhs(gens("b*a"), el("b*a")).is_err());
        assert!(rs.with_rhs(gens("g*a"), el("a*g")).is_err());
    }
}
