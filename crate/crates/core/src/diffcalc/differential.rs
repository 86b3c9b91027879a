use crate::algebra::{Coord, Element, Generator, Word};
use crate::cyclotomic::q_power;
use crate::hopf::coordinate_words;
use crate::report::Report;
use crate::rewrite::tables::relations;
use crate::rewrite::{normalize, Group, RuleSet};

use super::DiffError;

/// 𝖽 on one letter: coordinates go to first differentials, those to second
/// differentials, and second differentials to zero.  `None` on z and forms.
pub fn d_letter(g: Generator) -> Option<Option<Generator>> {
    match g {
        Generator::C(c) => Some(Some(Generator::D1(c))),
        Generator::D1(c) => Some(Some(Generator::D2(c))),
        Generator::D2(_) => Some(None),
        Generator::Z | Generator::W(_) => None,
    }
}

/// Graded Leibniz expansion in the free algebra:
/// Σᵢ q^{p(g₁…gᵢ₋₁)} g₁…gᵢ₋₁·𝖽gᵢ·gᵢ₊₁…gₙ.  `None` when a word contains z or
/// a form letter.
pub fn leibniz(x: &Element) -> Option<Element> {
    let mut out = Element::zero();
    for (w, c) in x.terms() {
        let letters = w.letters();
        let mut pg = 0i64;
        for (i, &g) in letters.iter().enumerate() {
            if let Some(dg) = d_letter(g)? {
                let mut v = letters.to_vec();
                v[i] = dg;
                out.add_term(Word(v), c * &q_power(pg));
            }
            pg += g.grade() as i64;
        }
    }
    Some(out)
}

/// 𝖽x in normal form.
pub fn differential(x: &Element, rs: &RuleSet) -> Result<Element, DiffError> {
    let d = leibniz(x).ok_or(DiffError::Undefined)?;
    Ok(normalize(&d, rs)?)
}

/// 𝖽ⁿx in normal form, normalizing between applications.
pub fn differential_n(x: &Element, n: usize, rs: &RuleSet) -> Result<Element, DiffError> {
    let mut cur = normalize(x, rs)?;
    for _ in 0..n {
        cur = differential(&cur, rs)?;
    }
    Ok(cur)
}

const CITE_D3: &str = "d-cubed";
const CITE_CUBES: &str = "cube-differentials";
const CITE_COMPAT: &str = "d-respects-relations";

/// 𝖽³ = 0 on normal coordinate words up to max_len, 𝖽²a ≠ 0, 𝖽(g³) = 0 and
/// 𝖽((𝖽g)³) = 0 for each generator, and 𝖽, 𝖽² of every coordinate and
/// first-order bimodule relation normalizing to zero.
pub fn verify_d_axioms(max_len: usize, rs: &RuleSet) -> Report {
    let mut rep = Report::new("d-axioms", rs.config());
    let second = Group::second_order().iter().all(|&g| rs.has_group(g));
    if !second {
        rep.excluded
            .push("second-order checks (no second-order relations in the rule set)".into());
        for r in relations(Group::Coord, rs.config().case).expect("coordinate table") {
            let id = format!("d({})", r.text);
            let res = r
                .element(rs.config().reading, &rs.config().scope())
                .map_err(DiffError::from)
                .and_then(|e| differential(&e, rs));
            match res {
                Ok(x) => rep.check(id, CITE_COMPAT, &x),
                Err(e) => rep.error(id, CITE_COMPAT, e),
            }
        }
        for c in Coord::ALL {
            let id = format!("d({}^3) = 0", c.name());
            match differential(&Element::coord(c).pow(3), rs) {
                Ok(r) => rep.check(id, CITE_CUBES, &r),
                Err(e) => rep.error(id, CITE_CUBES, e),
            }
        }
        return rep;
    }
    for w in coordinate_words(max_len) {
        let id = format!("d3({w}) = 0");
        match differential_n(&Element::word(w), 3, rs) {
            Ok(r) => rep.check(id, CITE_D3, &r),
            Err(e) => rep.error(id, CITE_D3, e),
        }
    }
    let a = Element::coord(Coord::A);
    match differential_n(&a, 2, rs) {
        Ok(r) => rep.check_bool("d2(a) != 0", CITE_D3, !r.is_zero(), "d2(a) vanishes"),
        Err(e) => rep.error("d2(a) != 0", CITE_D3, e),
    }
    for c in Coord::ALL {
        for (id, x) in [
            (format!("d({}^3) = 0", c.name()), Element::coord(c).pow(3)),
            (format!("d((d{})^3) = 0", c.name()), Element::gen(Generator::D1(c)).pow(3)),
        ] {
            match differential(&x, rs) {
                Ok(r) => rep.check(id, CITE_CUBES, &r),
                Err(e) => rep.error(id, CITE_CUBES, e),
            }
        }
    }
    let case = rs.config().case;
    let scope = rs.config().scope();
    for (group, times) in [(Group::Coord, 2), (Group::CoordDiff1, 2)] {
        for r in relations(group, case).expect("tabulated group") {
            for n in 1..=times {
                let id = format!("d{}({})", if n == 1 { "" } else { "2" }, r.text);
                let res = r
                    .element(rs.config().reading, &scope)
                    .map_err(DiffError::from)
                    .and_then(|e| differential_n(&e, n, rs));
                match res {
                    Ok(x) => rep.check(id, CITE_COMPAT, &x),
                    Err(e) => rep.error(id, CITE_COMPAT, e),
                }
            }
        }
    }
    rep
}
