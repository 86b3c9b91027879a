//! Finite-dimensional representation checks: the graded 4×4 representation ρ,
//! the scalar family L(P, Q), the matrices F of the form calculus, and the
//! 2×2 matrices χ.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Coord, Element, Generator};
use crate::cyclotomic::{q_power, CycNum};
use crate::diffcalc::closed_forms;
use crate::expr::Scope;
use crate::matrix::CycMatrix;
use crate::report::{Report, Status};
use crate::rewrite::tables::relations;
use crate::rewrite::{CalculusConfig, Case, Group, Reading, P1, P2};

const CITE_RHO: &str = "rho-representation";
const CITE_L: &str = "L-family";
const CITE_F: &str = "F-representation";
const CITE_CHI: &str = "chi-brackets";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("entry ({0},{1}) is nonzero but has no declared grade")]
    Undeclared(usize, usize),
    #[error("entry ({0},{1}) receives summands of grades {2} and {3}")]
    MixedGrade(usize, usize, u8, u8),
    #[error("{0} is not a coordinate element")]
    NotCoordinate(String),
}

/// A matrix with a grade declared for each entry (`None`: must be zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedImage {
    pub matrix: CycMatrix,
    pub grades: Vec<Vec<Option<u8>>>,
}

impl GradedImage {
    /// Every nonzero entry gets the same grade.
    pub fn homogeneous(matrix: CycMatrix, grade: u8) -> Self {
        let n = matrix.dim();
        let grades = (0..n)
            .map(|i| (0..n).map(|j| (!matrix.get(i, j).is_zero()).then_some(grade)).collect())
            .collect();
        GradedImage { matrix, grades }
    }

    pub fn with_grades(matrix: CycMatrix, grades: Vec<Vec<Option<u8>>>) -> Result<Self, RepError> {
        let n = matrix.dim();
        if grades.len() != n || grades.iter().any(|r| r.len() != n) {
            return Err(RepError::Dimension(n, grades.len()));
        }
        for i in 0..n {
            for j in 0..n {
                if !matrix.get(i, j).is_zero() && grades[i][j].is_none() {
                    return Err(RepError::Undeclared(i + 1, j + 1));
                }
            }
        }
        Ok(GradedImage { matrix, grades })
    }

    pub fn identity(n: usize) -> Self {
        GradedImage::homogeneous(CycMatrix::identity(n), 0)
    }
}

/// Entry (i,j) = Σ_k q^{p(f)·p(g_kj)} f_ik g_kj, with p(g_kj) the declared
/// grade of the right factor's entry.  The product entry is declared with
/// grade p(f_ik) + p(g_kj) of its summands.
pub fn graded_rep_product(f: &GradedImage, f_grade: u8, g: &GradedImage) -> Result<GradedImage, RepError> {
    let n = f.matrix.dim();
    if g.matrix.dim() != n {
        return Err(RepError::Dimension(n, g.matrix.dim()));
    }
    let mut m = CycMatrix::zeros(n);
    let mut grades = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = CycNum::zero();
            let mut grade: Option<u8> = None;
            for k in 0..n {
                let (x, y) = (f.matrix.get(i, k), g.matrix.get(k, j));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let gx = f.grades[i][k].ok_or(RepError::Undeclared(i + 1, k + 1))?;
                let gy = g.grades[k][j].ok_or(RepError::Undeclared(k + 1, j + 1))?;
                let s = (gx + gy) % 3;
                match grade {
                    Some(t) if t != s => return Err(RepError::MixedGrade(i + 1, j + 1, t, s)),
                    _ => grade = Some(s),
                }
                acc += &(&(x * y) * &q_power(f_grade as i64 * gy as i64));
            }
            m.set(i, j, acc);
            grades[i][j] = grade;
        }
    }
    Ok(GradedImage { matrix: m, grades })
}

/// How the images of a word are multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductLaw {
    Graded,
    Ordinary,
}

/// Images of the four generators, indexed a, β, γ, d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRep {
    pub images: [GradedImage; 4],
    pub law: ProductLaw,
}

impl GradedRep {
    pub fn dim(&self) -> usize {
        self.images[0].matrix.dim()
    }

    /// Image of a coordinate element, word by word.
    pub fn eval(&self, x: &Element) -> Result<CycMatrix, RepError> {
        let n = self.dim();
        let mut out = CycMatrix::zeros(n);
        for (w, c) in x.terms() {
            let mut acc = GradedImage::identity(n);
            let mut p = 0u8;
            for &g in w.letters() {
                let Generator::C(t) = g else {
                    return Err(RepError::NotCoordinate(x.render()));
                };
                let img = &self.images[t.index()];
                acc = match self.law {
                    ProductLaw::Graded => graded_rep_product(&acc, p, img)?,
                    ProductLaw::Ordinary => graded_rep_product(&acc, 0, img)?,
                };
                p = (p + t.grade()) % 3;
            }
            out = out.add(&acc.matrix.scale(c));
        }
        Ok(out)
    }
}

fn q(n: i64) -> CycNum {
    q_power(n)
}

fn sparse(n: usize, entries: &[(usize, usize, CycNum)]) -> CycMatrix {
    let mut m = CycMatrix::zeros(n);
    for (i, j, v) in entries {
        m.set(*i, *j, v.clone());
    }
    m
}

/// ρ: nonzero entries of each image carry the generator's grade.
pub fn rho() -> GradedRep {
    let one = CycNum::one();
    let q2q = &q(2) - &q(1);
    let oq2 = &one - &q(2);
    let qm1 = &q(1) - &one;
    let a = sparse(4, &[(0, 0, q(1)), (1, 1, q(1)), (2, 2, one.clone()), (3, 3, one.clone())]);
    let b = sparse(4, &[(0, 1, q2q.clone()), (2, 3, q2q)]);
    let g = sparse(4, &[(0, 2, oq2.clone()), (1, 3, oq2)]);
    let d = sparse(
        4,
        &[
            (0, 0, one.clone()),
            (0, 3, &q(2) * &(&qm1 * &qm1)),
            (1, 1, one),
            (2, 2, q(1)),
            (3, 3, q(1)),
        ],
    );
    GradedRep {
        images: [
            GradedImage::homogeneous(a, 0),
            GradedImage::homogeneous(b, 2),
            GradedImage::homogeneous(g, 1),
            GradedImage::homogeneous(d, 0),
        ],
        law: ProductLaw::Graded,
    }
}

/// The two ways to close the unbalanced parenthesis in L(γ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LGammaReading {
    /// q²P − P⁻¹
    Outer,
    /// q²(P − P⁻¹)
    Inner,
}

impl LGammaReading {
    pub fn text(self) -> &'static str {
        match self {
            LGammaReading::Outer => "q2*P-P^-1",
            LGammaReading::Inner => "q2*(P-P^-1)",
        }
    }
}

/// L(P, Q) with P ∈ {q, q²}, Q ∈ {1, q²}.
pub fn l_family(p: P1, qq: P2, reading: LGammaReading) -> GradedRep {
    let one = CycNum::one();
    let p = p.value();
    let pi = p.inv().expect("P is a unit");
    let qv = qq.value();
    let qi = qv.inv().expect("Q is a unit");
    let a = sparse(
        4,
        &[(0, 0, p.clone()), (1, 1, p.clone()), (2, 2, &q(1) * &pi), (3, 3, p.clone())],
    );
    let b = sparse(
        4,
        &[(0, 1, &q(1) * &(&p - &one)), (3, 1, &q(2) * &(&qi - &qv))],
    );
    let g13 = match reading {
        LGammaReading::Outer => &(&q(2) * &p) - &pi,
        LGammaReading::Inner => &q(2) * &(&p - &pi),
    };
    let g = sparse(4, &[(0, 2, g13)]);
    let d = sparse(
        4,
        &[
            (0, 0, one.clone()),
            (0, 3, &p - &one),
            (1, 1, qv.clone()),
            (2, 2, q(1)),
            (3, 3, &q(1) * &qi),
        ],
    );
    GradedRep {
        images: [
            GradedImage::homogeneous(a, 0),
            GradedImage::homogeneous(b, 2),
            GradedImage::homogeneous(g, 1),
            GradedImage::homogeneous(d, 0),
        ],
        law: ProductLaw::Graded,
    }
}

/// F of the form calculus; scalar entries, ordinary product.
pub fn f_rep(cfg: &CalculusConfig) -> GradedRep {
    let img = |c: Coord| {
        let m = closed_forms::f_matrix(c, cfg).expect("F table parses");
        GradedImage::homogeneous(m, 0)
    };
    GradedRep {
        images: Coord::ALL.map(img),
        law: ProductLaw::Ordinary,
    }
}

/// χ_a, χ_β, χ_γ, χ_d.
pub fn chi() -> [CycMatrix; 4] {
    let one = CycNum::one();
    [
        sparse(2, &[(0, 0, one.clone())]),
        sparse(2, &[(0, 1, q(1))]),
        sparse(2, &[(1, 0, q(2))]),
        sparse(2, &[(1, 1, one)]),
    ]
}

/// Evaluate every coordinate relation; one entry per relation.
pub fn relation_entries(rep: &mut Report, rep_name: &str, cite: &str, r: &GradedRep) {
    for rel in relations(Group::Coord, Case::I).expect("coordinate table") {
        let id = format!("{rep_name}: {}", rel.text);
        let res = rel
            .element(Reading::Corrected, &Scope::default())
            .map_err(|e| e.to_string())
            .and_then(|e| r.eval(&e).map_err(|e| e.to_string()));
        match res {
            Ok(m) => rep.check_bool(id, cite, m.is_zero(), m.render()),
            Err(e) => rep.error(id, cite, e),
        }
    }
}

/// [χ_a,χ_β] = χ_β, [χ_a,χ_γ] = −χ_γ, [χ_a,χ_d] = 0, [χ_β,χ_γ] = χ_a − χ_d.
pub fn chi_bracket_report(cfg: &CalculusConfig) -> Report {
    let mut rep = Report::new("chi", cfg);
    let [a, b, g, d] = chi();
    let cases = [
        ("[chi_a, chi_b] = chi_b", a.commutator(&b), b.clone()),
        ("[chi_a, chi_g] = -chi_g", a.commutator(&g), g.scale(&-CycNum::one())),
        ("[chi_a, chi_d] = 0", a.commutator(&d), CycMatrix::zeros(2)),
        ("[chi_b, chi_g] = chi_a - chi_d", b.commutator(&g), a.sub(&d)),
    ];
    for (id, lhs, rhs) in cases {
        let r = lhs.sub(&rhs);
        rep.check_bool(id, CITE_CHI, r.is_zero(), r.render());
    }
    rep
}

pub fn chi_bracket_check() -> Report {
    chi_bracket_report(&CalculusConfig::standard())
}

/// Which representation `rep_check` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Rho,
    L(P1, P2, LGammaReading),
    F,
}

pub fn rep_check(which: Which, cfg: &CalculusConfig) -> Report {
    let mut rep = Report::new("representations", cfg);
    match which {
        Which::Rho => relation_entries(&mut rep, "rho", CITE_RHO, &rho()),
        Which::L(p, qq, reading) => {
            let name = format!("L(P={}, Q={}, gamma13={})", p.name(), qq.name(), reading.text());
            relation_entries(&mut rep, &name, CITE_L, &l_family(p, qq, reading))
        }
        Which::F => {
            let name = format!("F(P1={}, P2={})", cfg.p1.name(), cfg.p2.name());
            relation_entries(&mut rep, &name, CITE_F, &f_rep(cfg))
        }
    }
    rep
}

/// The whole representation suite: ρ with its two quoted entries, every
/// L(P, Q), F at the configured point, and the χ brackets.
///
/// L(γ) is shipped with the outer reading.  The inner reading is reported
/// per (P, Q): pass when it also works, erratum when only the outer one does.
pub fn verify_representations(cfg: &CalculusConfig) -> Report {
    let mut rep = Report::new("representations", cfg);
    relation_entries(&mut rep, "rho", CITE_RHO, &rho());

    let r = rho();
    let one = CycNum::one();
    let qm1 = &q(1) - &one;
    let quoted = [
        ("rho14(a*d) = (q-1)^2", "a*d", &qm1 * &qm1),
        (
            "rho14(b*g) = q2*(q2-q)*(1-q2)",
            "b*g",
            &(&q(2) * &(&q(2) - &q(1))) * &(&one - &q(2)),
        ),
    ];
    for (id, w, want) in quoted {
        let x = crate::expr::parse_element(w, &Scope::default()).expect("word parses");
        match r.eval(&x) {
            Ok(m) => {
                let got = m.get(0, 3).clone();
                rep.check_bool(id, CITE_RHO, got == want, got.to_string())
            }
            Err(e) => rep.error(id, CITE_RHO, e),
        }
    }

    for p in [P1::Q, P1::Q2] {
        for qq in [P2::One, P2::Q2] {
            let name = format!("L(P={}, Q={})", p.name(), qq.name());
            relation_entries(&mut rep, &name, CITE_L, &l_family(p, qq, LGammaReading::Outer));
            let mut alt = Report::new("alt", cfg);
            relation_entries(&mut alt, "", CITE_L, &l_family(p, qq, LGammaReading::Inner));
            let id = format!("{name} with gamma13 = {}", LGammaReading::Inner.text());
            if alt.passed() {
                rep.push(id, CITE_L, Status::Pass, "0");
            } else {
                let failing: Vec<String> =
                    alt.failures().map(|e| e.id.trim_start_matches(": ").to_string()).collect();
                rep.push(
                    id,
                    CITE_L,
                    Status::Erratum,
                    format!(
                        "fails {}; {} holds",
                        failing.join(", "),
                        LGammaReading::Outer.text()
                    ),
                );
            }
        }
    }

    let f = rep_check(Which::F, cfg);
    for e in f.entries {
        rep.push(e.id, &e.cite, e.status, e.residual);
    }
    let mut chi = chi_bracket_report(cfg);
    chi.suite = "chi".into();
    for e in chi.entries {
        rep.push(e.id, &e.cite, e.status, e.residual);
    }
    rep
}
