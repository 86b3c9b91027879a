//! Relation tables as data.  Each line is `lhs = rhs` in the expression
//! language with `P1`, `P2` bound by the configuration.  Lines whose printed
//! form differs from the shipped one keep the printed form in `literal`.

use crate::algebra::Element;
use crate::expr::{parse_element, ExprError, Scope};

use super::config::{Case, Group, Reading};

#[derive(Debug, Clone, Copy)]
pub struct Relation {
    pub text: &'static str,
    pub literal: Option<&'static str>,
}

const fn rel(text: &'static str) -> Relation {
    Relation {
        text,
        literal: None,
    }
}

const fn erratum(text: &'static str, literal: &'static str) -> Relation {
    Relation {
        text,
        literal: Some(literal),
    }
}

impl Relation {
    pub fn source(&self, reading: Reading) -> &'static str {
        match (reading, self.literal) {
            (Reading::Literal, Some(l)) => l,
            _ => self.text,
        }
    }

    pub fn is_erratum(&self) -> bool {
        self.literal.is_some()
    }

    /// Both sides lowered; the relation reads `lhs − rhs = 0`.
    pub fn sides(&self, reading: Reading, scope: &Scope) -> Result<(Element, Element), ExprError> {
        let src = self.source(reading);
        let (l, r) = src.split_once('=').expect("relation text has '='");
        Ok((parse_element(l, scope)?, parse_element(r, scope)?))
    }

    pub fn element(&self, reading: Reading, scope: &Scope) -> Result<Element, ExprError> {
        let (l, r) = self.sides(reading, scope)?;
        Ok(l - r)
    }
}

pub const COORD: &[Relation] = &[
    rel("a*b = b*a"),
    rel("a*g = q*g*a"),
    rel("b*g = g*b"),
    rel("d*g = q2*g*d"),
    rel("b*d = d*b"),
    rel("a*d = d*a + (q-1)*b*g"),
];

pub const COORD_DIFF1_I: &[Relation] = &[
    rel("a*da = P1*da*a"),
    rel("a*db = db*a + (q2*P2-1)*da*b"),
    rel("a*dg = q2*P1^-1*dg*a + q*(1-q*P1)*da*g"),
    rel("a*dd = dd*a + (q2*P2-1)*da*d + (q-1)*db*g"),
    rel("b*da = P2*da*b"),
    rel("b*db = P2*db*b"),
    rel("b*dg = P2*dg*b"),
    rel("b*dd = P2^-1*dd*b + q2*(1-P2)*db*d"),
    rel("g*da = P1^-1*da*g + (q-P1)*dg*a"),
    rel("g*dg = q2*P1*dg*g"),
    rel("g*db = q2*db*g + q*(P2-q)*dg*b"),
    rel("g*dd = dd*g + q*(P2-q)*dg*d"),
    rel("d*da = q2*P2*da*d + (q2-1)*P2*dg*b"),
    rel("d*dg = q*P2*dg*d"),
    rel("d*db = P2^-1*db*d + (q2-P2)*dd*b"),
    rel("d*dd = q2*P2*dd*d"),
];

pub const COORD_DIFF1_II: &[Relation] = &[
    rel("a*da = P1*da*a"),
    rel("a*dg = q2*P1^-1*dg*a + q*(1-q*P1)*da*g"),
    rel("a*db = P1*db*a"),
    rel("a*dd = P1*dd*a + (q-1)*P1*db*g"),
    rel("b*da = q*da*b + q*(P1-1)*db*a"),
    rel("b*db = P2*db*b"),
    rel("b*dg = q*dg*b + q*(P1-1)*db*g"),
    rel("b*dd = P2^-1*dd*b + q2*(1-P2)*db*d"),
    rel("g*da = P1^-1*da*g + (q-P1)*dg*a"),
    rel("g*db = q2*P1*db*g"),
    rel("g*dg = q2*P1*dg*g"),
    rel("g*dd = P1*dd*g"),
    rel("d*da = da*d + (1-q)*dg*b + (P1-1)*dd*a"),
    rel("d*db = P2^-1*db*d + (q2-P2)*dd*b"),
    rel("d*dg = q2*dg*d + (P1-1)*dd*g"),
    rel("d*dd = q2*P2*dd*d"),
];

pub const DIFF1_DIFF1: &[Relation] = &[
    rel("da*db = q2*db*da"),
    rel("da*dg = q2*dg*da"),
    rel("dd*db = q2*db*dd"),
    rel("dd*dg = dg*dd"),
    rel("db*dg = q2*dg*db"),
    rel("da*dd = dd*da + (q2-q)*dg*db"),
];

pub const DIFF1_DIFF2: &[Relation] = &[
    rel("da*d2a = q*d2a*da"),
    rel("da*d2g = d2g*da"),
    rel("da*d2b = q*P2*d2b*da + q*P2*(1-q*P2)*d2a*db"),
    rel("da*d2d = q2*P2*d2d*da + q*P2*(1-q*P2)*d2a*dd + P2*(q2-q)*d2b*dg"),
    rel("db*d2a = P2^-1*d2a*db + q*P2*(P2-1)*d2b*da"),
    rel("db*d2b = q2*d2b*db"),
    rel("db*d2g = q*P2^-1*d2g*db + q*P2*(P2-1)*d2b*dg"),
    rel("db*d2d = d2d*db"),
    rel("dg*d2a = q2*d2a*dg + (1-q)*d2g*da"),
    rel("dg*d2g = d2g*dg"),
    rel("dg*d2b = q2*P2*d2b*dg + P2*(1-q*P2)*d2g*db"),
    rel("dg*d2d = q*P2*d2d*dg + P2*(1-q*P2)*d2g*dd"),
    rel("dd*d2a = q*P2^-1*d2a*dd + P2^-1*(q2-1)*d2g*db + P2*(P2-1)*d2d*da"),
    rel("dd*d2b = q*d2b*dd + (q-q2)*d2d*db"),
    rel("dd*d2g = q*P2^-1*d2g*dd + P2*(P2-1)*d2d*dg"),
    rel("dd*d2d = q*d2d*dd"),
];

/// Identically zero at (q², 1); the two corrected lines are forced by
/// requiring 𝖽 to respect the first-order bimodule relations at (q, q²).
pub const DIFF1_SQ: &[Relation] = &[
    rel("(q*P1-1)*da*da = (q2-P1)*d2a*a"),
    rel("(P2-1)*db*db = (1-P2)*d2b*b"),
    rel("(P2-1)*da*db = P2*(P2-1)*(q*d2b*a + P2*d2a*b)"),
    rel("(q-P1^-1)*da*dg = (q*P1-1)*(d2g*a + d2a*g)"),
    erratum(
        "(P2-1)*da*dd = P2*(P2-1)*(q*d2d*a + P2*d2a*d + (q2-q)*d2b*g)",
        "(P2-1)*da*dd = (P2-1)*(q*d2d*a + P2*d2a*d + (q2-q)*d2b*g)",
    ),
    erratum(
        "(P2-1)*db*dg = P2*(P2-1)*(d2g*b + q2*d2b*g)",
        "(P2-1)*db*dg = P2*(P2-1)*(P2*d2g*b + q2*d2b*g)",
    ),
    rel("(P2-1)*db*dd = (P2-1)*(q*d2d*b + q2*d2b*d)"),
    rel("(P2-1)*dg*dd = P2*(P2-1)*(q*d2d*g + q2*P2*d2g*d)"),
    rel("(P1-q2)*dg*dg = q*(q2-P1)*d2g*g"),
    rel("(P2-1)*dd*dd = q2*(1-P2)*d2d*d"),
];

/// The printed `a·𝖽²a = q²𝖽a·a` and `d·𝖽²d = q²𝖽d²·d` are grade-inconsistent
/// and are read as `q²𝖽²a·a` and `q²𝖽²d·d` in every reading.
pub const COORD_DIFF2: &[Relation] = &[
    rel("a*d2a = q2*d2a*a"),
    rel("a*d2g = d2g*a"),
    rel("a*d2b = P2*d2b*a + P2*(q2-P2)*d2a*b"),
    rel("a*d2d = P2*d2d*a + P2*(q2-P2)*d2a*d + P2*(q-1)*d2b*g"),
    rel("b*d2a = q*P2^2*d2a*b + P2*(P2-1)*d2b*a"),
    rel("b*d2b = q*d2b*b"),
    rel("b*d2g = q*P2^-1*d2g*b + P2*(P2-1)*d2b*g"),
    rel("b*d2d = q*d2d*b"),
    rel("g*d2a = d2a*g + (1-q)*d2g*a"),
    rel("g*d2g = d2g*g"),
    rel("g*d2b = q*P2*d2b*g + P2*(1-q*P2)*d2g*b"),
    rel("g*d2d = q2*P2*d2d*g + P2*(1-q*P2)*d2g*d"),
    erratum(
        "d*d2a = q2*P2^-1*d2a*d + P2^-1*(q2-1)*d2g*b + q*P2*(P2-1)*d2d*a",
        "d*d2a = q2*P2^-1*d2a*d + P2^-1*(q2-1)*d2g*b + P2*(P2-1)*d2d*a",
    ),
    rel("d*d2b = d2b*d + (q2-1)*d2d*b"),
    rel("d*d2d = q2*d2d*d"),
    rel("d*d2g = q*P2^-1*d2g*d + q*P2*(P2-1)*d2d*g"),
];

pub const DIFF2_DIFF2: &[Relation] = &[
    rel("d2a*d2b = q*d2b*d2a"),
    rel("d2b*d2g = q*d2g*d2b"),
    rel("d2a*d2g = d2g*d2a"),
    rel("d2b*d2d = q2*d2d*d2b"),
    rel("d2g*d2d = q2*d2d*d2g"),
    rel("d2a*d2d = d2d*d2a + (q2-q)*d2b*d2g"),
];

/// Form commutation rules.  The printed w₁·w₄ line carries a spurious
/// −P₁P₂·w₃·w₂ term, and the printed w₃·w₄ line has w₁·w₄ (wrong grade)
/// where w₃·w₁ is meant.
pub const FORM_FORM: &[Relation] = &[
    rel("w1*w2 = q2*P1*w2*w1"),
    rel("w1*w3 = P2*w3*w1"),
    rel("w2*w3 = P1*P2^-1*w3*w2"),
    erratum(
        "w1*w4 = q2*P2*w4*w1 + (1-q2*P2)*w1*w1",
        "w1*w4 = q2*P2*w4*w1 + (1-q2*P2)*(w1*w1 - P1*P2*w3*w2)",
    ),
    rel("w2*w4 = q*w4*w2 + q*(q*P2^-1-1)*w1*w2"),
    erratum(
        "w3*w4 = q2*w4*w3 + (P2^-1-q2)*w3*w1",
        "w3*w4 = q2*w4*w3 + (P2^-1-q2)*w1*w4",
    ),
];

/// Relation lines of a group, or `None` for groups generated from other
/// data (Central, FormCoord).
pub fn relations(group: Group, case: Case) -> Option<&'static [Relation]> {
    Some(match group {
        Group::Coord => COORD,
        Group::CoordDiff1 => match case {
            Case::I => COORD_DIFF1_I,
            Case::II => COORD_DIFF1_II,
        },
        Group::Diff1Diff1 => DIFF1_DIFF1,
        Group::Diff1Diff2 => DIFF1_DIFF2,
        Group::Diff1Sq => DIFF1_SQ,
        Group::CoordDiff2 => COORD_DIFF2,
        Group::Diff2Diff2 => DIFF2_DIFF2,
        Group::FormForm => FORM_FORM,
        Group::Central | Group::FormCoord => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word_grade;
    use crate::rewrite::config::CalculusConfig;

    #[test]
    fn every_line_parses_and_is_homogeneous() {
        for cfg in [CalculusConfig::standard(), CalculusConfig::alternate()] {
            for reading in [Reading::Corrected, Reading::Literal] {
                for g in Group::ALL {
                    for case in [Case::I, Case::II] {
                        let Some(rels) = relations(g, case) else { continue };
                        for r in rels {
                            let e = r.element(reading, &cfg.scope()).unwrap();
                            let grades: std::collections::BTreeSet<u8> =
                                e.words().map(word_grade).collect();
                            // The printed w3*w4 line is the one known grade defect.
                            let known_defect = reading == Reading::Literal
                                && r.literal.is_some_and(|l| l.contains("w1*w4"));
                            assert!(
                                grades.len() <= 1 || known_defect,
                                "{} mixes grades",
                                r.source(reading)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn table_sizes() {
        assert_eq!(COORD.len(), 6);
        assert_eq!(COORD_DIFF1_I.len(), 16);
        assert_eq!(COORD_DIFF1_II.len(), 16);
        assert_eq!(DIFF1_DIFF2.len(), 16);
        assert_eq!(COORD_DIFF2.len(), 16);
        assert_eq!(DIFF1_SQ.len(), 10);
        assert_eq!(DIFF2_DIFF2.len(), 6);
        assert_eq!(FORM_FORM.len(), 6);
    }
}
