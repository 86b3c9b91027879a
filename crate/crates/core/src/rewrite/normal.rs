use std::collections::HashMap;

use crate::algebra::{Element, TensorElement, Word};

use super::ruleset::RuleSet;
use super::RewriteError;

/// Normal-form computation with a per-instance cache of reduced words.
///
/// Not `Sync`; parallel callers create one per worker.
pub struct Normalizer<'r> {
    rules: &'r RuleSet,
    memo: HashMap<Word, Element>,
}

impl<'r> Normalizer<'r> {
    pub fn new(rules: &'r RuleSet) -> Self {
        Normalizer {
            rules,
            memo: HashMap::new(),
        }
    }

    pub fn rules(&self) -> &'r RuleSet {
        self.rules
    }

    pub fn normalize(&mut self, x: &Element) -> Result<Element, RewriteError> {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let n = self.word(w)?;
            out.add_scaled(&n, c);
        }
        Ok(out)
    }

    /// Normalize each tensor slot independently.
    pub fn normalize_tensor(&mut self, t: &TensorElement) -> Result<TensorElement, RewriteError> {
        let mut out = TensorElement::zero();
        for ((u, v), c) in t.terms() {
            let nu = self.word(u)?;
            let nv = self.word(v)?;
            for (wu, cu) in nu.terms() {
                for (wv, cv) in nv.terms() {
                    out.add_term(wu.clone(), wv.clone(), &(c * cu) * cv);
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a single word.  The leftmost pair that has a rule is
    /// rewritten first; a descending pair without a rule is an error.
    pub fn word(&mut self, w: &Word) -> Result<Element, RewriteError> {
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        let letters = w.letters();
        let redex = (0..letters.len().saturating_sub(1))
            .find(|&i| self.rules.rule(letters[i], letters[i + 1]).is_some());
        let result = match redex {
            None => {
                if !w.is_sorted() {
                    return Err(RewriteError::Unreducible(w.clone()));
                }
                Element::word(w.clone())
            }
            Some(i) => {
                let rule = self.rules.rule(letters[i], letters[i + 1]).unwrap();
                let prefix = &letters[..i];
                let suffix = &letters[i + 2..];
                let mut out = Element::zero();
                for (rw, c) in rule.rhs.terms() {
                    let mut v = Vec::with_capacity(letters.len());
                    v.extend_from_slice(prefix);
                    v.extend_from_slice(rw.letters());
                    v.extend_from_slice(suffix);
                    let n = self.word(&Word(v))?;
                    out.add_scaled(&n, c);
                }
                out
            }
        };
        self.memo.insert(w.clone(), result.clone());
        Ok(result)
    }
}

pub fn normalize(x: &Element, rs: &RuleSet) -> Result<Element, RewriteError> {
    Normalizer::new(rs).normalize(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Coord, Generator};
    use crate::expr::{determinant, parse_element};
    use crate::rewrite::config::{CalculusConfig, Group};
    use crate::rewrite::ruleset::{build_ruleset, standard_ruleset};
    use proptest::prelude::*;

    fn el(s: &str) -> Element {
        parse_element(s, &CalculusConfig::standard().scope()).unwrap()
    }

    fn std_rs() -> RuleSet {
        standard_ruleset(CalculusConfig::standard()).unwrap()
    }

    #[test]
    fn coordinate_examples() {
        let rs = std_rs();
        assert_eq!(normalize(&el("g*a"), &rs).unwrap(), el("q2*a*g"));
        assert_eq!(normalize(&el("d*a"), &rs).unwrap(), el("a*d - (q-1)*b*g"));
        assert_eq!(
            normalize(&el("a*db"), &rs).unwrap(),
            el("db*a + (q2-1)*da*b")
        );
        assert!(normalize(&Element::zero(), &rs).unwrap().is_zero());
        assert_eq!(normalize(&Element::one(), &rs).unwrap(), Element::one());
    }

    #[test]
    fn missing_group_is_an_error() {
        let rs = build_ruleset(CalculusConfig::standard(), &[Group::Coord]).unwrap();
        let err = normalize(&el("a*da"), &rs).unwrap_err();
        assert!(matches!(err, RewriteError::Unreducible(_)));
    }

    #[test]
    fn determinant_and_cubes_are_central() {
        let rs = std_rs();
        let det = determinant();
        for c in Coord::ALL {
            let g = Element::coord(c);
            let comm = &(&det * &g) - &(&g * &det);
            assert!(normalize(&comm, &rs).unwrap().is_zero(), "D vs {c:?}");
            for h in Coord::ALL {
                let h = Element::coord(h);
                let cube = g.pow(3);
                let comm = &(&cube * &h) - &(&h * &cube);
                assert!(normalize(&comm, &rs).unwrap().is_zero());
            }
        }
        let z = Element::gen(Generator::Z);
        let comm = &(&z * &el("d")) - &(&el("d") * &z);
        assert!(normalize(&comm, &rs).unwrap().is_zero());
    }

    fn coord_word() -> impl Strategy<Value = Element> {
        prop::collection::vec((0usize..4, -3i64..4), 0..5).prop_map(|v| {
            let mut w = Vec::new();
            let mut c = 1;
            for (i, k) in v {
                w.push(Generator::C(Coord::ALL[i]));
                c += k;
            }
            Element::term(Word(w), crate::cyclotomic::CycNum::int(c))
        })
    }

    proptest! {
        #[test]
        fn normal_forms_are_idempotent_and_sorted(x in coord_word(), y in coord_word()) {
            let rs = std_rs();
            let e = &x + &(&y * &x);
            let n = normalize(&e, &rs).unwrap();
            prop_assert!(n.words().all(|w| w.is_sorted()));
            prop_assert_eq!(normalize(&n, &rs).unwrap(), n);
        }
    }
}
