//! Coproduct, counit and antipode of the graded quantum group, and checks of
//! the Hopf axioms against the rewriting system.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{tensor_mul, Coord, Element, GenClass, Generator, TensorElement, Word};
use crate::cyclotomic::{q_power, CycNum};
use crate::expr::determinant;
use crate::report::Report;
use crate::rewrite::localize::equal_mod_det;
use crate::rewrite::normal::Normalizer;
use crate::rewrite::tables::COORD;
use crate::rewrite::{Reading, RewriteError, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("generator {0} is not in the Hopf algebra")]
    NotInAlgebra(Generator),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

const CITE_AXIOMS: &str = "hopf-axioms";
const CITE_BIALGEBRA: &str = "bialgebra-structure";

fn c(x: Coord) -> Word {
    Word(vec![Generator::C(x)])
}

/// Generator tables for Δ, ε and S.  Kept as data so that tests can corrupt
/// them.
#[derive(Debug, Clone)]
pub struct HopfData {
    pub coproduct: BTreeMap<Generator, TensorElement>,
    pub counit: BTreeMap<Generator, CycNum>,
    pub antipode: BTreeMap<Generator, Element>,
}

impl HopfData {
    /// Δ(t_ij) = Σ_k t_ik ⊗ t_kj, ε(t_ij) = δ_ij, S from the inverse matrix;
    /// z = D⁻¹ is group-like with S(z) = D.
    pub fn standard() -> HopfData {
        let mut coproduct = BTreeMap::new();
        let mut counit = BTreeMap::new();
        let mut antipode = BTreeMap::new();
        for x in Coord::ALL {
            let (i, j) = x.position();
            let mut t = TensorElement::zero();
            for k in 0..2 {
                t.add_term(c(Coord::at(i, k)), c(Coord::at(k, j)), CycNum::one());
            }
            coproduct.insert(Generator::C(x), t);
            counit.insert(
                Generator::C(x),
                if i == j { CycNum::one() } else { CycNum::zero() },
            );
        }
        let z = Word(vec![Generator::Z]);
        coproduct.insert(Generator::Z, TensorElement::simple(z.clone(), z, CycNum::one()));
        counit.insert(Generator::Z, CycNum::one());

        let zc = |x: Coord, k: CycNum| {
            Element::term(Word(vec![Generator::C(x), Generator::Z]), k)
        };
        antipode.insert(Generator::C(Coord::A), zc(Coord::D, CycNum::one()));
        antipode.insert(Generator::C(Coord::B), zc(Coord::B, -CycNum::one()));
        antipode.insert(Generator::C(Coord::G), zc(Coord::G, -q_power(1)));
        antipode.insert(Generator::C(Coord::D), zc(Coord::A, CycNum::one()));
        antipode.insert(Generator::Z, determinant());
        HopfData {
            coproduct,
            counit,
            antipode,
        }
    }

    fn gen_coproduct(&self, g: Generator) -> Result<&TensorElement, HopfError> {
        self.coproduct.get(&g).ok_or(HopfError::NotInAlgebra(g))
    }

    pub fn coproduct_word(&self, w: &Word) -> Result<TensorElement, HopfError> {
        let mut acc = TensorElement::one();
        for &g in w.letters() {
            acc = tensor_mul(&acc, self.gen_coproduct(g)?);
        }
        Ok(acc)
    }

    /// Multiplicative extension into the graded tensor square; not normalized.
    pub fn coproduct(&self, x: &Element) -> Result<TensorElement, HopfError> {
        let mut out = TensorElement::zero();
        for (w, k) in x.terms() {
            out.add_scaled(&self.coproduct_word(w)?, k);
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &Word) -> Result<CycNum, HopfError> {
        let mut acc = CycNum::one();
        for &g in w.letters() {
            acc = &acc * self.counit.get(&g).ok_or(HopfError::NotInAlgebra(g))?;
        }
        Ok(acc)
    }

    pub fn counit(&self, x: &Element) -> Result<CycNum, HopfError> {
        let mut out = CycNum::zero();
        for (w, k) in x.terms() {
            out += &(k * &self.counit_word(w)?);
        }
        Ok(out)
    }

    /// S(uv) = q^{p(u)p(v)} S(v)S(u), unnormalized.
    pub fn antipode_word(&self, w: &Word) -> Result<Element, HopfError> {
        let mut acc = Element::one();
        let mut pg = 0i64;
        for &g in w.letters() {
            let s = self.antipode.get(&g).ok_or(HopfError::NotInAlgebra(g))?;
            acc = (s * &acc).scale(&q_power(pg * g.grade() as i64));
            pg += g.grade() as i64;
        }
        Ok(acc)
    }

    pub fn antipode_free(&self, x: &Element) -> Result<Element, HopfError> {
        let mut out = Element::zero();
        for (w, k) in x.terms() {
            out.add_scaled(&self.antipode_word(w)?, k);
        }
        Ok(out)
    }
}

pub fn coproduct(x: &Element) -> Result<TensorElement, HopfError> {
    HopfData::standard().coproduct(x)
}

pub fn counit(x: &Element) -> Result<CycNum, HopfError> {
    HopfData::standard().counit(x)
}

/// Antipode in normal form.
pub fn antipode(x: &Element, rs: &RuleSet) -> Result<Element, HopfError> {
    let s = HopfData::standard().antipode_free(x)?;
    Ok(Normalizer::new(rs).normalize(&s)?)
}

/// Normal coordinate words of length 1..=max_len (nondecreasing sequences).
pub fn coordinate_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Coord>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in Coord::ALL {
                if w.last().is_none_or(|&l| l <= x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|v| Word(v.iter().map(|&x| Generator::C(x)).collect())));
        layer = next;
    }
    out
}

type Triple = BTreeMap<(Word, Word, Word), CycNum>;

fn add3(t: &mut Triple, key: (Word, Word, Word), k: CycNum) {
    let e = t.entry(key).or_insert_with(CycNum::zero);
    *e += &k;
}

fn normalize3(t: &Triple, nz: &mut Normalizer<'_>) -> Result<Triple, RewriteError> {
    let mut out = Triple::new();
    for ((u, v, w), k) in t {
        let (nu, nv, nw) = (nz.word(u)?, nz.word(v)?, nz.word(w)?);
        for (a, ka) in nu.terms() {
            for (b, kb) in nv.terms() {
                for (c3, kc) in nw.terms() {
                    add3(&mut out, (a.clone(), b.clone(), c3.clone()), &(&(k * ka) * kb) * kc);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn render3(t: &Triple) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|((u, v, w), k)| format!("{}*{u} (x) {v} (x) {w}", k.render_q()))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// m∘(f⊗g) on a tensor, with f and g given wordwise.
fn contract(
    t: &TensorElement,
    mut f: impl FnMut(&Word) -> Result<Element, HopfError>,
    mut g: impl FnMut(&Word) -> Result<Element, HopfError>,
) -> Result<Element, HopfError> {
    let mut out = Element::zero();
    for ((u, v), k) in t.terms() {
        out.add_scaled(&(&f(u)? * &g(v)?), k);
    }
    Ok(out)
}

fn check_word(
    data: &HopfData,
    w: &Word,
    nz: &mut Normalizer<'_>,
) -> Result<Vec<(String, bool, String)>, HopfError> {
    let rs = nz.rules();
    let x = Element::word(w.clone());
    let dx = data.coproduct(&x)?;
    let mut out = Vec::new();

    // (Δ⊗id)Δ = (id⊗Δ)Δ
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((u, v), k) in dx.terms() {
        for ((u1, u2), k1) in data.coproduct_word(u)?.terms() {
            add3(&mut left, (u1.clone(), u2.clone(), v.clone()), k * k1);
        }
        for ((v1, v2), k2) in data.coproduct_word(v)?.terms() {
            add3(&mut right, (u.clone(), v1.clone(), v2.clone()), k * k2);
        }
    }
    let mut diff = left;
    for (key, k) in right {
        add3(&mut diff, key, -k);
    }
    let diff = normalize3(&diff, nz)?;
    out.push((format!("coassociativity {w}"), diff.is_empty(), render3(&diff)));

    // m(ε⊗id)Δ = id = m(id⊗ε)Δ
    let nx = nz.normalize(&x)?;
    let eps = |u: &Word| Ok(Element::scalar(data.counit_word(u)?));
    let id = |u: &Word| Ok(Element::word(u.clone()));
    let l = nz.normalize(&contract(&dx, eps, id)?)?;
    let r = nz.normalize(&contract(&dx, id, eps)?)?;
    let res = &(&l - &nx) + &(&r - &nx);
    out.push((format!("counit {w}"), res.is_zero(), res.render()));

    // m(S⊗id)Δ = ε·1 = m(id⊗S)Δ modulo the determinant ideal
    let e = Element::scalar(data.counit(&x)?);
    let s = |u: &Word| data.antipode_word(u);
    let sl = contract(&dx, s, id)?;
    let sr = contract(&dx, id, s)?;
    let ok_l = equal_mod_det(&sl, &e, rs)?;
    let ok_r = equal_mod_det(&sr, &e, rs)?;
    let detail = format!(
        "m(S*id)D = {}; m(id*S)D = {}; expected {}",
        nz.normalize(&sl)?.render(),
        nz.normalize(&sr)?.render(),
        e.render()
    );
    out.push((format!("antipode {w}"), ok_l && ok_r, detail));
    Ok(out)
}

/// Coassociativity, counit and antipode laws on every normal coordinate word
/// up to `max_len`.
pub fn verify_hopf_axioms_with(data: &HopfData, max_len: usize, rs: &RuleSet) -> Report {
    let mut rep = Report::new("hopf", rs.config());
    let words = coordinate_words(max_len);
    let results: Vec<_> = words
        .par_iter()
        .map_init(|| Normalizer::new(rs), |nz, w| (w, check_word(data, w, nz)))
        .collect();
    for (w, r) in results {
        match r {
            Ok(entries) => {
                for (id, ok, detail) in entries {
                    rep.check_bool(id, CITE_AXIOMS, ok, detail);
                }
            }
            Err(e) => rep.error(format!("axioms {w}"), CITE_AXIOMS, e),
        }
    }
    // group-likeness of the determinant
    let mut nz = Normalizer::new(rs);
    let det = determinant();
    let lhs = data
        .coproduct(&det)
        .map_err(|e| e.to_string())
        .and_then(|t| nz.normalize_tensor(&t).map_err(|e| e.to_string()));
    match lhs {
        Ok(lhs) => {
            let nd = nz.normalize(&det).unwrap_or_default();
            let rhs = TensorElement::of(&nd, &nd);
            let diff = &lhs - &rhs;
            rep.check_bool("coproduct of D is D (x) D", CITE_AXIOMS, diff.is_zero(), diff.render());
        }
        Err(e) => rep.error("coproduct of D is D (x) D", CITE_AXIOMS, e),
    }
    rep
}

pub fn verify_hopf_axioms(max_len: usize, rs: &RuleSet) -> Report {
    verify_hopf_axioms_with(&HopfData::standard(), max_len, rs)
}

/// Δ and ε respect each coordinate relation.
pub fn verify_delta_homomorphism_with(data: &HopfData, rs: &RuleSet) -> Report {
    let mut rep = Report::new("bialgebra", rs.config());
    let scope = rs.config().scope();
    let mut nz = Normalizer::new(rs);
    for r in COORD {
        let id = r.source(Reading::Corrected);
        let rel = match r.element(Reading::Corrected, &scope) {
            Ok(e) => e,
            Err(e) => {
                rep.error(id, CITE_BIALGEBRA, e);
                continue;
            }
        };
        match data
            .coproduct(&rel)
            .and_then(|t| Ok(nz.normalize_tensor(&t)?))
        {
            Ok(t) => rep.check_bool(format!("coproduct {id}"), CITE_BIALGEBRA, t.is_zero(), t.render()),
            Err(e) => rep.error(format!("coproduct {id}"), CITE_BIALGEBRA, e),
        }
        match data.counit(&rel) {
            Ok(k) => rep.check_bool(format!("counit {id}"), CITE_BIALGEBRA, k.is_zero(), k.render_q()),
            Err(e) => rep.error(format!("counit {id}"), CITE_BIALGEBRA, e),
        }
    }
    rep
}

pub fn verify_delta_homomorphism(rs: &RuleSet) -> Report {
    verify_delta_homomorphism_with(&HopfData::standard(), rs)
}

/// True when every letter of `x` is a coordinate or z.
pub fn in_hopf_algebra(x: &Element) -> bool {
    x.words()
        .flat_map(|w| w.letters().iter())
        .all(|g| matches!(g.class(), GenClass::Coordinate | GenClass::DetInv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::rewrite::{build_ruleset, CalculusConfig, Group};

    fn el(s: &str) -> Element {
        parse_element(s, &CalculusConfig::standard().scope()).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn rs() -> RuleSet {
        build_ruleset(CalculusConfig::standard(), &[Group::Coord, Group::Central]).unwrap()
    }

    #[test]
    fn coproduct_examples() {
        let t = coproduct(&el("a")).unwrap();
        let mut expect = TensorElement::simple(w("a"), w("a"), CycNum::one());
        expect.add_term(w("b"), w("g"), CycNum::one());
        assert_eq!(t, expect);
        assert_eq!(coproduct(&Element::one()).unwrap(), TensorElement::one());
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&el("a")).unwrap(), CycNum::one());
        assert!(counit(&el("b")).unwrap().is_zero());
        assert_eq!(counit(&determinant()).unwrap(), CycNum::one());
        assert!(counit(&el("da")).is_err());
    }

    #[test]
    fn antipode_examples() {
        let rs = rs();
        assert_eq!(antipode(&el("a"), &rs).unwrap(), el("z*d"));
        assert_eq!(antipode(&el("b*g"), &rs).unwrap(), el("z^2*b*g"));
        assert_eq!(antipode(&Element::one(), &rs).unwrap(), Element::one());
    }

    #[test]
    fn antipode_is_a_graded_antihomomorphism() {
        let rs = rs();
        let words: Vec<Word> = coordinate_words(2);
        for u in &words {
            for v in &words {
                let uv = Element::word(u.concat(v));
                let lhs = antipode(&uv, &rs).unwrap();
                let su = antipode(&Element::word(u.clone()), &rs).unwrap();
                let sv = antipode(&Element::word(v.clone()), &rs).unwrap();
                let k = q_power(u.grade() as i64 * v.grade() as i64);
                let rhs = crate::rewrite::normalize(&(&sv * &su).scale(&k), &rs).unwrap();
                assert_eq!(lhs, rhs, "S({u}*{v})");
            }
        }
    }

    #[test]
    fn counit_of_antipode() {
        let rs = rs();
        for u in coordinate_words(3) {
            let x = Element::word(u);
            assert_eq!(counit(&antipode(&x, &rs).unwrap()).unwrap(), counit(&x).unwrap());
        }
    }

    #[test]
    fn axioms_hold() {
        let rs = rs();
        let rep = verify_hopf_axioms(1, &rs);
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.entries.len(), 4 * 3 + 1);
        let rep = verify_delta_homomorphism(&rs);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn corrupted_coproduct_is_detected() {
        let rs = rs();
        let mut data = HopfData::standard();
        // transpose the first row: Δ(a) = a⊗a + γ⊗β
        let mut t = TensorElement::simple(w("a"), w("a"), CycNum::one());
        t.add_term(w("g"), w("b"), CycNum::one());
        data.coproduct.insert(Generator::C(Coord::A), t);
        assert!(!verify_delta_homomorphism_with(&data, &rs).passed());
    }

    #[test]
    fn coordinate_word_counts() {
        // multisets of size k from 4 letters
        assert_eq!(coordinate_words(1).len(), 4);
        assert_eq!(coordinate_words(3).len(), 4 + 10 + 20);
    }
}
