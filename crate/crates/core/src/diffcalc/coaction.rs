//! The left coaction Δ_L : Ω¹ → 𝒪 ⊗ Ω¹ and covariance checks.

use std::collections::BTreeMap;

use crate::algebra::{tensor_mul, Coord, Element, Form, GenClass, Generator, TensorElement, Word};
use crate::cyclotomic::{q_power, CycNum};
use crate::expr::determinant;
use crate::hopf::HopfData;
use crate::report::Report;
use crate::rewrite::normal::Normalizer;
use crate::rewrite::tables::relations;
use crate::rewrite::{Group, RuleSet};

use super::forms::x_form;
use super::DiffError;

const CITE_COVARIANCE: &str = "left-covariance";
const CITE_COINVARIANCE: &str = "left-coinvariance";

/// Δ_L on the four differentials, kept as data so tests can corrupt it.
#[derive(Debug, Clone)]
pub struct CoactionTable(pub BTreeMap<Coord, TensorElement>);

impl CoactionTable {
    /// Δ_L(𝖽t_ij) = Σ_k q^{p(t_ik)} t_ik ⊗ 𝖽t_kj.
    pub fn standard() -> Self {
        let entries = [
            (Coord::A, [(Coord::A, Coord::A, 0), (Coord::B, Coord::G, 2)]),
            (Coord::B, [(Coord::A, Coord::B, 0), (Coord::B, Coord::D, 2)]),
            (Coord::G, [(Coord::G, Coord::A, 1), (Coord::D, Coord::G, 0)]),
            (Coord::D, [(Coord::G, Coord::B, 1), (Coord::D, Coord::D, 0)]),
        ];
        let mut map = BTreeMap::new();
        for (x, terms) in entries {
            let mut t = TensorElement::zero();
            for (u, v, e) in terms {
                t.add_term(
                    Word(vec![Generator::C(u)]),
                    Word(vec![Generator::D1(v)]),
                    q_power(e),
                );
            }
            map.insert(x, t);
        }
        CoactionTable(map)
    }

    /// Δ_L of a one-form given in any letter order; both slots normalized.
    pub fn coact(&self, x: &Element, rs: &RuleSet) -> Result<TensorElement, DiffError> {
        let hopf = HopfData::standard();
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            let diffs = w
                .letters()
                .iter()
                .filter(|g| g.class() == GenClass::Diff1)
                .count();
            if diffs != 1 {
                return Err(DiffError::MalformedForm(w.clone()));
            }
            let mut acc = TensorElement::one();
            for &g in w.letters() {
                let factor = match g {
                    Generator::D1(x) => self.0[&x].clone(),
                    Generator::C(_) => hopf.coproduct_word(&Word(vec![g]))?,
                    _ => return Err(DiffError::MalformedForm(w.clone())),
                };
                acc = tensor_mul(&acc, &factor);
            }
            out.add_scaled(&acc, c);
        }
        Ok(Normalizer::new(rs).normalize_tensor(&out)?)
    }
}

pub fn left_coact(x: &Element, rs: &RuleSet) -> Result<TensorElement, DiffError> {
    CoactionTable::standard().coact(x, rs)
}

/// (τ′⊗𝖽)Δ(f) with τ′(u) = q^{p(u)} u, slots normalized.
pub fn twisted_d_coproduct(f: &Element, rs: &RuleSet) -> Result<TensorElement, DiffError> {
    let t = HopfData::standard().coproduct(f)?;
    let mut out = TensorElement::zero();
    for ((u, v), c) in t.terms() {
        let Some(dv) = super::leibniz(&Element::word(v.clone())) else {
            return Err(DiffError::Undefined);
        };
        let k = c * &q_power(u.grade() as i64);
        out.add_scaled(&TensorElement::of(&Element::word(u.clone()), &dv), &k);
    }
    Ok(Normalizer::new(rs).normalize_tensor(&out)?)
}

/// Δ_L∘𝖽 = (τ′⊗𝖽)∘Δ on generators and on coordinate words of length 2,
/// and Δ_L applied to every bimodule relation gives zero.
pub fn verify_covariance_with(table: &CoactionTable, rs: &RuleSet) -> Report {
    let mut rep = Report::new("covariance", rs.config());
    let mut words: Vec<Word> = Coord::ALL
        .iter()
        .map(|&c| Word(vec![Generator::C(c)]))
        .collect();
    for x in Coord::ALL {
        for y in Coord::ALL {
            words.push(Word(vec![Generator::C(x), Generator::C(y)]));
        }
    }
    for w in words {
        let f = Element::word(w.clone());
        let id = format!("coaction of d({w})");
        let res = (|| -> Result<TensorElement, DiffError> {
            let df = super::differential(&f, rs)?;
            let lhs = table.coact(&df, rs)?;
            let rhs = twisted_d_coproduct(&f, rs)?;
            Ok(&lhs - &rhs)
        })();
        match res {
            Ok(t) => rep.check_bool(id, CITE_COVARIANCE, t.is_zero(), t.render()),
            Err(e) => rep.error(id, CITE_COVARIANCE, e),
        }
    }
    let case = rs.config().case;
    let cite = Group::CoordDiff1.cite(case);
    let scope = rs.config().scope();
    for r in relations(Group::CoordDiff1, case).expect("bimodule table") {
        let id = format!("coaction of {}", r.text);
        let res = r
            .element(rs.config().reading, &scope)
            .map_err(DiffError::from)
            .and_then(|e| table.coact(&e, rs));
        match res {
            Ok(t) => rep.check_bool(id, cite, t.is_zero(), t.render()),
            Err(e) => rep.error(id, cite, e),
        }
    }
    rep
}

pub fn verify_covariance(rs: &RuleSet) -> Report {
    verify_covariance_with(&CoactionTable::standard(), rs)
}

/// Δ_L(X_i) = D ⊗ X_i, the z-cleared form of Δ_L(w_i) = 1 ⊗ w_i.
pub fn verify_coinvariance(rs: &RuleSet) -> Report {
    let mut rep = Report::new("coinvariance", rs.config());
    let mut nz = Normalizer::new(rs);
    for f in Form::ALL {
        let id = format!("w{} is left-coinvariant", f.index() + 1);
        let res = (|| -> Result<TensorElement, DiffError> {
            let x = x_form(f);
            let lhs = left_coact(&x, rs)?;
            let rhs = TensorElement::of(&nz.normalize(&determinant())?, &nz.normalize(&x)?);
            Ok(&lhs - &rhs)
        })();
        match res {
            Ok(t) => rep.check_bool(id, CITE_COINVARIANCE, t.is_zero(), t.render()),
            Err(e) => rep.error(id, CITE_COINVARIANCE, e),
        }
    }
    rep
}

/// Coefficient of u ⊗ v in a coaction, for tests and diagnostics.
pub fn coaction_coeff(t: &TensorElement, u: &str, v: &str) -> CycNum {
    t.coeff(
        &Word::parse(u).expect("word"),
        &Word::parse(v).expect("word"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::rewrite::{standard_ruleset, CalculusConfig};
    use num_traits::One;

    #[test]
    fn generator_coaction() {
        let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
        let t = left_coact(&Element::gen(Generator::D1(Coord::A)), &rs).unwrap();
        assert_eq!(coaction_coeff(&t, "a", "da"), CycNum::one());
        assert_eq!(coaction_coeff(&t, "b", "dg"), q_power(2));
        assert_eq!(t.len(), 2);
        assert!(left_coact(&Element::zero(), &rs).unwrap().is_zero());
        let bad = parse_element("a", &Default::default()).unwrap();
        assert!(left_coact(&bad, &rs).is_err());
    }

    #[test]
    fn suites_pass_at_both_points() {
        for cfg in [CalculusConfig::standard(), CalculusConfig::alternate()] {
            let rs = standard_ruleset(cfg).unwrap();
            let r = verify_covariance(&rs);
            assert!(r.passed(), "{}", r.to_text());
            let r = verify_coinvariance(&rs);
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
        let mut table = CoactionTable::standard();
        let t = table.0.get_mut(&Coord::A).unwrap();
        t.add_term(
            Word::parse("b").unwrap(),
            Word::parse("dg").unwrap(),
            q_power(1) - q_power(2),
        );
        assert!(!verify_covariance_with(&table, &rs).passed());
    }
}
