use rayon::prelude::*;

use crate::algebra::{Element, Word};

use super::normal::Normalizer;
use super::ruleset::RuleSet;
use super::RewriteError;

/// A cubic word xyz with rules for both xy and yz, and the difference of
/// the two reductions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub word: Word,
    pub residual: Element,
}

#[derive(Debug, Clone, Default)]
pub struct ConfluenceReport {
    /// Number of overlap words examined.
    pub checked: usize,
    /// Overlaps whose two reductions disagree, in word order.
    pub failures: Vec<Overlap>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn overlap_words(rs: &RuleSet) -> Vec<Word> {
    let mut out = Vec::new();
    for r1 in rs.rules() {
        let (x, y) = r1.lhs;
        for r2 in rs.rules().filter(|r| r.lhs.0 == y) {
            out.push(Word(vec![x, y, r2.lhs.1]));
        }
    }
    out.sort();
    out
}

fn resolve(nz: &mut Normalizer<'_>, w: &Word) -> Result<Element, RewriteError> {
    let rs = nz.rules();
    let [x, y, z] = [w.0[0], w.0[1], w.0[2]];
    let left = &rs.rule(x, y).unwrap().rhs * &Element::gen(z);
    let right = &Element::gen(x) * &rs.rule(y, z).unwrap().rhs;
    Ok(&nz.normalize(&left)? - &nz.normalize(&right)?)
}

pub fn check_local_confluence(rs: &RuleSet) -> Result<ConfluenceReport, RewriteError> {
    let words = overlap_words(rs);
    let residuals: Vec<Result<Overlap, RewriteError>> = words
        .par_iter()
        .map_init(
            || Normalizer::new(rs),
            |nz, w| {
                Ok(Overlap {
                    word: w.clone(),
                    residual: resolve(nz, w)?,
                })
            },
        )
        .collect();
    let mut failures = Vec::new();
    for r in residuals {
        let o = r?;
        if !o.residual.is_zero() {
            failures.push(o);
        }
    }
    Ok(ConfluenceReport {
        checked: words.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::config::{CalculusConfig, Group};
    use crate::rewrite::ruleset::build_ruleset;

    #[test]
    fn coordinate_rules_are_confluent() {
        let rs = build_ruleset(CalculusConfig::standard(), &[Group::Coord]).unwrap();
        let rep = check_local_confluence(&rs).unwrap();
        assert!(rep.is_confluent());
        assert!(rep.checked > 0);
        let dga = Word::parse("d*g*a").unwrap();
        assert!(overlap_words(&rs).contains(&dga));
    }

    #[test]
    fn corrupted_rule_is_detected() {
        let rs = build_ruleset(CalculusConfig::standard(), &[Group::Coord]).unwrap();
        let key = (Word::parse("g").unwrap().0[0], Word::parse("a").unwrap().0[0]);
        let rhs = rs.rule(key.0, key.1).unwrap().rhs.scale(&crate::cyclotomic::q_power(1));
        let bad = rs.with_rhs(key, rhs).unwrap();
        assert!(!check_local_confluence(&bad).unwrap().is_confluent());
    }
}
