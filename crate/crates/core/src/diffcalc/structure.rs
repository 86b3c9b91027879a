//! Structure matrices σ, τ, μ, μ̃ computed from their defining products,
//! their twisted multiplicativity laws, and the F / χ data of the forms.
//!
//! Defining identities (𝖽g = (𝖽a, 𝖽β, 𝖽γ, 𝖽d), X_i the z-cleared forms):
//!
//! * σ:  f·𝖽g_j = Σ_i q^{p(f)p(𝖽g_j)} 𝖽g_i·σ_ij(f)
//! * τ:  𝖽g_i·f = Σ_j q^{p(f)p(𝖽g_j)} τ_ij(f)·𝖽g_j
//! * μ:  X_i·f = q^{p(f)p(w_i)} Σ_j μ_ij(f)·X_j
//! * μ̃:  f·X_i = Σ_j q^{−p(f)p(w_j)} X_j·μ̃_ji(f)

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Coord, Element, Form, GenClass, Generator, Word};
use crate::cyclotomic::q_power;
use crate::hopf::{coordinate_words, HopfData};
use crate::linalg::{solve_in_span, LinError};
use crate::matrix::{elem_matrix_zero, render_elem_matrix, CycMatrix, ElemMatrix};
use crate::repcheck::{chi, chi_bracket_report};
use crate::report::Report;
use crate::rewrite::localize::equal_mod_det;
use crate::rewrite::normal::Normalizer;
use crate::rewrite::tables::relations;
use crate::rewrite::{Case, Group, Reading, RuleSet};

use super::closed_forms;
use super::forms::x_form;
use super::DiffError;

const CITE_SIGMA: &str = "sigma-closed-form";
const CITE_TAU: &str = "tau-closed-form";
const CITE_MU: &str = "mu-closed-form";
const CITE_SIGMA_LAW: &str = "sigma-multiplicativity";
const CITE_TAU_LAW: &str = "tau-multiplicativity";
const CITE_MU_LAW: &str = "mu-multiplicativity";
const CITE_MUTILDE_LAW: &str = "mutilde-multiplicativity";
const CITE_INVERSE: &str = "mu-mutilde-inverse";
const CITE_PRESERVE: &str = "sigma-tau-preserve-relations";
const CITE_F: &str = "F-closed-form";
const CITE_F_COPRODUCT: &str = "mu-from-F-coproduct";
const CITE_CHI: &str = "chi-reconstruction";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Sigma,
    Tau,
    Mu,
    MuTilde,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Sigma, Kind::Tau, Kind::Mu, Kind::MuTilde];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Sigma => "sigma",
            Kind::Tau => "tau",
            Kind::Mu => "mu",
            Kind::MuTilde => "mutilde",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Grade of the i-th basis element (𝖽g_i or w_i).
    fn index_grade(self, i: usize) -> i64 {
        match self {
            Kind::Sigma | Kind::Tau => Coord::ALL[i].grade() as i64 + 1,
            Kind::Mu | Kind::MuTilde => Form::ALL[i].grade() as i64,
        }
    }

    /// Grade of entry (row, col) for an argument of grade pf.
    fn entry_grade(self, pf: i64, row: usize, col: usize) -> u8 {
        let (r, c) = (self.index_grade(row), self.index_grade(col));
        let g = match self {
            Kind::Sigma | Kind::MuTilde => pf + c - r,
            Kind::Tau | Kind::Mu => pf + r - c,
        };
        g.rem_euclid(3) as u8
    }

    /// σ and μ̃ solve one column at a time, τ and μ one row at a time.
    fn by_column(self) -> bool {
        matches!(self, Kind::Sigma | Kind::MuTilde)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn d1(i: usize) -> Element {
    Element::gen(Generator::D1(Coord::ALL[i]))
}

fn xf(i: usize) -> Element {
    x_form(Form::ALL[i])
}

/// Grade of a homogeneous coordinate element, 0 for zero.
fn coord_grade(f: &Element) -> Result<i64, DiffError> {
    if f.words().flat_map(|w| w.letters()).any(|g| g.class() != GenClass::Coordinate) {
        return Err(DiffError::Basis(format!("{f} is not a coordinate element")));
    }
    match f.grade() {
        Some(g) => Ok(g as i64),
        None if f.is_zero() => Ok(0),
        None => Err(DiffError::Basis(format!("{f} is not grade-homogeneous"))),
    }
}

/// Left side of the defining identity at index r.
fn defining_lhs(kind: Kind, f: &Element, r: usize) -> Element {
    match kind {
        Kind::Sigma => f * &d1(r),
        Kind::Tau => &d1(r) * f,
        Kind::Mu => &xf(r) * f,
        Kind::MuTilde => f * &xf(r),
    }
}

/// The summand of the defining identity contributed by the entry at
/// (r, j) (or (j, r) for column kinds) with value m.
fn defining_term(kind: Kind, pf: i64, r: usize, j: usize, m: &Element) -> Element {
    let g = |i| kind.index_grade(i);
    match kind {
        Kind::Sigma => (&d1(j) * m).scale(&q_power(pf * g(r))),
        Kind::Tau => (m * &d1(j)).scale(&q_power(pf * g(j))),
        Kind::Mu => (m * &xf(j)).scale(&q_power(pf * g(r))),
        Kind::MuTilde => (&xf(j) * m).scale(&q_power(-pf * g(j))),
    }
}

fn entry<'m>(kind: Kind, m: &'m ElemMatrix, r: usize, j: usize) -> &'m Element {
    if kind.by_column() {
        &m[j][r]
    } else {
        &m[r][j]
    }
}

/// Normalized residuals of the defining identity, one per index.
pub fn defining_residuals(
    kind: Kind,
    f: &Element,
    m: &ElemMatrix,
    nz: &mut Normalizer<'_>,
) -> Result<Vec<Element>, DiffError> {
    let pf = coord_grade(f)?;
    let mut out = Vec::new();
    for r in 0..4 {
        let mut res = defining_lhs(kind, f, r);
        for j in 0..4 {
            res = &res - &defining_term(kind, pf, r, j, entry(kind, m, r, j));
        }
        out.push(nz.normalize(&res)?);
    }
    Ok(out)
}

/// Normal coordinate words of the given lengths and grade.
fn basis(lengths: &[usize], grade: u8) -> Vec<Element> {
    let max = lengths.iter().copied().max().unwrap_or(0);
    let mut words = vec![Word::empty()];
    words.extend(coordinate_words(max));
    words
        .into_iter()
        .filter(|w| lengths.contains(&w.len()) && w.grade() == grade)
        .map(Element::word)
        .collect()
}

/// The matrix of `kind` at f, solved from the normalized defining identity.
pub fn structure_matrix(kind: Kind, f: &Element, rs: &RuleSet) -> Result<ElemMatrix, DiffError> {
    let mut nz = Normalizer::new(rs);
    let f = nz.normalize(f)?;
    let pf = coord_grade(&f)?;
    let mut out = elem_matrix_zero(4);
    if f.is_zero() {
        return Ok(out);
    }
    let mut lengths: Vec<usize> = f.words().map(|w| w.len()).collect();
    lengths.sort();
    lengths.dedup();
    for r in 0..4 {
        let target = nz.normalize(&defining_lhs(kind, &f, r))?;
        let mut slots = Vec::new();
        let mut cols = Vec::new();
        for j in 0..4 {
            let (row, col) = if kind.by_column() { (j, r) } else { (r, j) };
            for m in basis(&lengths, kind.entry_grade(pf, row, col)) {
                cols.push(nz.normalize(&defining_term(kind, pf, r, j, &m))?);
                slots.push((row, col, m));
            }
        }
        let x = solve_in_span(&target, &cols).map_err(|e| match e {
            LinError::Inconsistent => DiffError::Basis(format!(
                "{kind}({f}): index {} leaves words outside the basis",
                r + 1
            )),
            other => DiffError::Lin(other),
        })?;
        for ((row, col, m), c) in slots.into_iter().zip(x) {
            out[row][col].add_scaled(&m, &c);
        }
    }
    Ok(out)
}

/// The matrix of a product fg from those of f and g.
pub fn compose(kind: Kind, mf: &ElemMatrix, pf: i64, mg: &ElemMatrix, pg: i64) -> ElemMatrix {
    let g = |i| kind.index_grade(i);
    let mut out = elem_matrix_zero(4);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let e = match kind {
                    Kind::Sigma | Kind::Tau => pf * (g(k) - g(j)),
                    Kind::Mu => pg * (g(k) - g(i)),
                    Kind::MuTilde => pg * (g(i) - g(k)),
                };
                let t = &mf[i][k] * &mg[k][j];
                out[i][j].add_scaled(&t, &q_power(e));
            }
        }
    }
    out
}

fn normalize_matrix(m: &ElemMatrix, nz: &mut Normalizer<'_>) -> Result<ElemMatrix, DiffError> {
    m.iter()
        .map(|row| row.iter().map(|x| Ok(nz.normalize(x)?)).collect())
        .collect()
}

fn closed_form(kind: Kind, f: Coord, rs: &RuleSet) -> Result<Option<ElemMatrix>, DiffError> {
    let cfg = rs.config();
    Ok(match kind {
        Kind::Sigma => Some(closed_forms::sigma(f, cfg)?),
        Kind::Tau => Some(closed_forms::tau(f, cfg)?),
        Kind::Mu => Some(closed_forms::mu(f, cfg)?),
        Kind::MuTilde => None,
    })
}

fn case_one(rep: &mut Report, rs: &RuleSet) -> bool {
    if rs.config().case == Case::I {
        return true;
    }
    rep.excluded.push("closed forms are given for case I only".into());
    false
}

/// First-principles matrices against the closed forms, the twisted
/// multiplicativity laws on pairs of normal words with |f| + |g| ≤ max_len,
/// the μ/μ̃ inverse identity, and σ, τ preserving the coordinate relations.
pub fn verify_structure_homomorphisms(max_len: usize, rs: &RuleSet) -> Report {
    let mut rep = Report::new("sigma-tau", rs.config());
    if !case_one(&mut rep, rs) {
        return rep;
    }
    let mut nz = Normalizer::new(rs);

    for kind in [Kind::Sigma, Kind::Tau, Kind::Mu] {
        let cite = match kind {
            Kind::Sigma => CITE_SIGMA,
            Kind::Tau => CITE_TAU,
            _ => CITE_MU,
        };
        for f in Coord::ALL {
            let id = format!("{kind}({}) closed form", f.name());
            let res = (|| -> Result<Vec<String>, DiffError> {
                let computed = structure_matrix(kind, &Element::coord(f), rs)?;
                let closed = closed_form(kind, f, rs)?.expect("tabulated kind");
                let mut bad = Vec::new();
                for i in 0..4 {
                    for j in 0..4 {
                        let d = nz.normalize(&(&computed[i][j] - &closed[i][j]))?;
                        if !d.is_zero() {
                            bad.push(format!("({},{}): {}", i + 1, j + 1, d));
                        }
                    }
                }
                Ok(bad)
            })();
            match res {
                Ok(bad) => rep.check_bool(id, cite, bad.is_empty(), bad.join("; ")),
                Err(e) => rep.error(id, cite, e),
            }
        }
    }

    // Multiplicativity.  Matrices of single words come from first principles.
    let words: Vec<Word> = coordinate_words(max_len.saturating_sub(1).max(1));
    let mut cache: BTreeMap<(Kind, Word), Result<ElemMatrix, DiffError>> = BTreeMap::new();
    let mut matrix_of = |kind: Kind, w: &Word| {
        cache
            .entry((kind, w.clone()))
            .or_insert_with(|| structure_matrix(kind, &Element::word(w.clone()), rs))
            .clone()
    };
    for kind in Kind::ALL {
        let cite = match kind {
            Kind::Sigma => CITE_SIGMA_LAW,
            Kind::Tau => CITE_TAU_LAW,
            Kind::Mu => CITE_MU_LAW,
            Kind::MuTilde => CITE_MUTILDE_LAW,
        };
        for f in &words {
            for g in &words {
                if f.len() + g.len() > max_len.max(2) {
                    continue;
                }
                let id = format!("{kind}({f}*{g})");
                let res = (|| -> Result<Vec<Element>, DiffError> {
                    let mf = matrix_of(kind, f)?;
                    let mg = matrix_of(kind, g)?;
                    let m = compose(kind, &mf, f.grade() as i64, &mg, g.grade() as i64);
                    let fg = Element::word(f.concat(g));
                    defining_residuals(kind, &fg, &m, &mut nz)
                })();
                match res {
                    Ok(r) => {
                        let bad: Vec<String> = r.iter().filter(|x| !x.is_zero()).map(|x| x.render()).collect();
                        rep.check_bool(id, cite, bad.is_empty(), bad.join("; "))
                    }
                    Err(e) => rep.error(id, cite, e),
                }
            }
        }
    }

    // Σ_k q^{[p(f) − p(μ_ik(f))]p(w_j)} μ̃_jk(μ_ik(f)) = δ_ij f
    for f in coordinate_words(max_len.saturating_sub(1).max(1)) {
        let id = format!("mutilde(mu({f})) = {f}");
        let res = (|| -> Result<Vec<String>, DiffError> {
            let fe = Element::word(f.clone());
            let pf = f.grade() as i64;
            let mu = structure_matrix(Kind::Mu, &fe, rs)?;
            let mut bad = Vec::new();
            for i in 0..4 {
                let inner: Vec<ElemMatrix> = (0..4)
                    .map(|k| structure_matrix(Kind::MuTilde, &mu[i][k], rs))
                    .collect::<Result<_, _>>()?;
                for j in 0..4 {
                    let mut s = Element::zero();
                    for (k, mt) in inner.iter().enumerate() {
                        if mu[i][k].is_zero() {
                            continue;
                        }
                        let pm = coord_grade(&nz.normalize(&mu[i][k])?)?;
                        let e = (pf - pm) * Kind::Mu.index_grade(j);
                        s.add_scaled(&mt[j][k], &q_power(e));
                    }
                    if i == j {
                        s = &s - &fe;
                    }
                    let r = nz.normalize(&s)?;
                    if !r.is_zero() {
                        bad.push(format!("({},{}): {}", i + 1, j + 1, r));
                    }
                }
            }
            Ok(bad)
        })();
        match res {
            Ok(bad) => rep.check_bool(id, CITE_INVERSE, bad.is_empty(), bad.join("; ")),
            Err(e) => rep.error(id, CITE_INVERSE, e),
        }
    }

    // σ and τ extended multiplicatively from the closed forms kill the coordinate relations.
    let scope = rs.config().scope();
    for kind in [Kind::Sigma, Kind::Tau] {
        for r in relations(Group::Coord, Case::I).expect("coordinate table") {
            let id = format!("{kind} preserves {}", r.text);
            let res = (|| -> Result<ElemMatrix, DiffError> {
                let rel = r.element(Reading::Corrected, &scope)?;
                let mut total = elem_matrix_zero(4);
                for (w, c) in rel.terms() {
                    let m = word_from_closed_forms(kind, w, rs)?;
                    for i in 0..4 {
                        for j in 0..4 {
                            total[i][j].add_scaled(&m[i][j], c);
                        }
                    }
                }
                normalize_matrix(&total, &mut nz)
            })();
            match res {
                Ok(m) => {
                    let ok = m.iter().flatten().all(Element::is_zero);
                    rep.check_bool(id, CITE_PRESERVE, ok, render_elem_matrix(&m))
                }
                Err(e) => rep.error(id, CITE_PRESERVE, e),
            }
        }
    }
    rep
}

/// σ or τ of a coordinate word, composed from the generator closed forms.
pub fn word_from_closed_forms(kind: Kind, w: &Word, rs: &RuleSet) -> Result<ElemMatrix, DiffError> {
    let mut acc = identity_matrix();
    let mut pacc = 0i64;
    for &g in w.letters() {
        let Generator::C(c) = g else {
            return Err(DiffError::Basis(format!("{w} is not a coordinate word")));
        };
        let m = closed_form(kind, c, rs)?
            .ok_or_else(|| DiffError::Config(format!("no closed form for {kind}")))?;
        acc = compose(kind, &acc, pacc, &m, c.grade() as i64);
        pacc += c.grade() as i64;
    }
    Ok(acc)
}

fn identity_matrix() -> ElemMatrix {
    let mut m = elem_matrix_zero(4);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Element::one();
    }
    m
}

/// m∘(id ⊗ φ)Δ(f) for a linear functional φ on coordinate words.
pub fn convolve(
    f: &Element,
    phi: impl Fn(&Word) -> crate::cyclotomic::CycNum,
) -> Result<Element, DiffError> {
    let t = HopfData::standard().coproduct(f)?;
    let mut out = Element::zero();
    for ((u, v), c) in t.terms() {
        out.add_scaled(&Element::word(u.clone()), &(c * &phi(v)));
    }
    Ok(out)
}

/// F extended to words by the ordinary matrix product.
pub fn f_of_word(w: &Word, rs: &RuleSet) -> Result<CycMatrix, DiffError> {
    let mut acc = CycMatrix::identity(4);
    for &g in w.letters() {
        let Generator::C(c) = g else {
            return Err(DiffError::Basis(format!("{w} is not a coordinate word")));
        };
        acc = acc.mul(&closed_forms::f_matrix(c, rs.config())?);
    }
    Ok(acc)
}

/// μ(t) = t·F(t) on generators, μ rebuilt as m∘(id⊗F)Δ(f) on normal words
/// up to length two, the χ brackets, and 𝖽f = q^{p(f)} Σ_i (χ_i * f)·w_i.
pub fn verify_f_and_chi(rs: &RuleSet) -> Report {
    let mut rep = Report::new("mu-F-chi", rs.config());
    if !case_one(&mut rep, rs) {
        return rep;
    }
    let mut nz = Normalizer::new(rs);
    let cfg = rs.config();

    for t in Coord::ALL {
        let id = format!("mu({0}) = {0}*F({0})", t.name());
        let (a, b) = t.position();
        let res = (|| -> Result<Vec<String>, DiffError> {
            let mu = structure_matrix(Kind::Mu, &Element::coord(t), rs)?;
            let mut bad = Vec::new();
            for i in 0..4 {
                for j in 0..4 {
                    let mut s = mu[i][j].clone();
                    for k in 0..2 {
                        let fk = closed_forms::f_matrix(Coord::at(k, b), cfg)?;
                        s.add_scaled(&Element::coord(Coord::at(a, k)), &-fk.get(i, j));
                    }
                    let r = nz.normalize(&s)?;
                    if !r.is_zero() {
                        bad.push(format!("({},{}): {}", i + 1, j + 1, r));
                    }
                }
            }
            Ok(bad)
        })();
        match res {
            Ok(bad) => rep.check_bool(id, CITE_F, bad.is_empty(), bad.join("; ")),
            Err(e) => rep.error(id, CITE_F, e),
        }
    }

    // F on every right tensor factor (these need not be normal words).
    let hopf = HopfData::standard();
    let mut f_table: BTreeMap<Word, CycMatrix> = BTreeMap::new();
    for w in coordinate_words(2) {
        let res = hopf.coproduct_word(&w).map_err(DiffError::from).and_then(|t| {
            for ((_, v), _) in t.terms() {
                if !f_table.contains_key(v) {
                    f_table.insert(v.clone(), f_of_word(v, rs)?);
                }
            }
            Ok(())
        });
        if let Err(e) = res {
            rep.error(format!("F on the coproduct of {w}"), CITE_F_COPRODUCT, e);
        }
    }
    for w in coordinate_words(2) {
        let id = format!("w_i*{w} from the coproduct and F");
        let res = (|| -> Result<Vec<Element>, DiffError> {
            let f = Element::word(w.clone());
            let mut m = elem_matrix_zero(4);
            for (i, row) in m.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    // Δ of a normal word only produces words of the same length.
                    *e = convolve(&f, |v| {
                        f_table.get(v).map(|fv| fv.get(i, j).clone()).unwrap_or_default()
                    })?;
                }
            }
            defining_residuals(Kind::Mu, &f, &m, &mut nz)
        })();
        match res {
            Ok(r) => {
                let bad: Vec<String> = r.iter().filter(|x| !x.is_zero()).map(|x| x.render()).collect();
                rep.check_bool(id, CITE_F_COPRODUCT, bad.is_empty(), bad.join("; "))
            }
            Err(e) => rep.error(id, CITE_F_COPRODUCT, e),
        }
    }

    let mut brackets = chi_bracket_report(cfg);
    brackets.suite = "chi".into();
    rep.absorb(brackets);

    let chis = chi();
    for t in Coord::ALL {
        let id = format!("d{} from the chi convolutions", t.name());
        let res = (|| -> Result<bool, DiffError> {
            let f = Element::coord(t);
            let mut rhs = Element::zero();
            for (i, ch) in chis.iter().enumerate() {
                let conv = convolve(&f, |v| match v.letters() {
                    [Generator::C(c)] => {
                        let (k, l) = c.position();
                        ch.get(k, l).clone()
                    }
                    _ => Default::default(),
                })?;
                let zx = &Element::gen(Generator::Z) * &xf(i);
                rhs = &rhs + &(&conv * &zx);
            }
            let rhs = rhs.scale(&q_power(t.grade() as i64));
            let lhs = Element::gen(Generator::D1(t));
            Ok(equal_mod_det(&lhs, &rhs, rs)?)
        })();
        match res {
            Ok(ok) => rep.check_bool(id, CITE_CHI, ok, "nonzero after clearing the determinant"),
            Err(e) => rep.error(id, CITE_CHI, e),
        }
    }
    rep
}
