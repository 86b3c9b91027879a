use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cyclotomic::{q_power, CycNum};
use crate::expr::Scope;

use super::RewriteError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    I,
    II,
}

/// P₁ ∈ {q, q²}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum P1 {
    Q,
    Q2,
}

/// P₂ ∈ {1, q²}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum P2 {
    One,
    Q2,
}

/// Which transcription of a table line to use where the printed text and a
/// registered correction differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Reading {
    #[default]
    Corrected,
    Literal,
}

impl P1 {
    pub fn value(self) -> CycNum {
        match self {
            P1::Q => q_power(1),
            P1::Q2 => q_power(2),
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            P1::Q => "q",
            P1::Q2 => "q2",
        }
    }
}

impl P2 {
    pub fn value(self) -> CycNum {
        match self {
            P2::One => q_power(0),
            P2::Q2 => q_power(2),
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            P2::One => "1",
            P2::Q2 => "q2",
        }
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" | "1" => Ok(Case::I),
            "II" | "2" => Ok(Case::II),
            _ => Err(format!("unknown case {s:?} (expected I or II)")),
        }
    }
}

impl FromStr for P1 {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q" | "w" => Ok(P1::Q),
            "q2" => Ok(P1::Q2),
            _ => Err(format!("P1 must be q or q2, got {s:?}")),
        }
    }
}

impl FromStr for P2 {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" => Ok(P2::One),
            "q2" => Ok(P2::Q2),
            _ => Err(format!("P2 must be 1 or q2, got {s:?}")),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
        })
    }
}

/// Rule families.  Declaration order is application priority: when two
/// groups share a key the earlier one wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    Coord,
    Central,
    CoordDiff1,
    Diff1Sq,
    Diff1Diff1,
    Diff1Diff2,
    CoordDiff2,
    Diff2Diff2,
    FormCoord,
    FormForm,
}

impl Group {
    pub const ALL: [Group; 10] = [
        Group::Coord,
        Group::Central,
        Group::CoordDiff1,
        Group::Diff1Sq,
        Group::Diff1Diff1,
        Group::Diff1Diff2,
        Group::CoordDiff2,
        Group::Diff2Diff2,
        Group::FormCoord,
        Group::FormForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Coord => "Coord",
            Group::Central => "Central",
            Group::CoordDiff1 => "CoordDiff1",
            Group::Diff1Sq => "Diff1Sq",
            Group::Diff1Diff1 => "Diff1Diff1",
            Group::Diff1Diff2 => "Diff1Diff2",
            Group::CoordDiff2 => "CoordDiff2",
            Group::Diff2Diff2 => "Diff2Diff2",
            Group::FormCoord => "FormCoord",
            Group::FormForm => "FormForm",
        }
    }

    pub fn from_name(s: &str) -> Option<Group> {
        Group::ALL.into_iter().find(|g| g.name() == s)
    }

    /// Citation tag carried by table headers and report entries.
    pub fn cite(self, case: Case) -> &'static str {
        match (self, case) {
            (Group::Coord, _) => "coordinate-relations",
            (Group::Central, _) => "determinant-centrality",
            (Group::CoordDiff1, Case::I) => "bimodule-first-order-case-I",
            (Group::CoordDiff1, Case::II) => "bimodule-first-order-case-II",
            (Group::Diff1Sq, _) => "first-differential-products",
            (Group::Diff1Diff1, _) => "differential-commutation",
            (Group::Diff1Diff2, _) => "first-second-differentials",
            (Group::CoordDiff2, _) => "coordinate-second-differentials",
            (Group::Diff2Diff2, _) => "second-differential-commutation",
            (Group::FormCoord, _) => "form-coordinate",
            (Group::FormForm, _) => "form-commutation",
        }
    }

    pub fn is_second_order(self) -> bool {
        matches!(
            self,
            Group::Diff1Sq | Group::Diff1Diff2 | Group::CoordDiff2 | Group::Diff2Diff2
        )
    }

    pub fn is_form(self) -> bool {
        matches!(self, Group::FormCoord | Group::FormForm)
    }

    pub fn first_order() -> Vec<Group> {
        vec![
            Group::Coord,
            Group::Central,
            Group::CoordDiff1,
            Group::Diff1Diff1,
        ]
    }

    pub fn second_order() -> Vec<Group> {
        vec![
            Group::Coord,
            Group::Central,
            Group::CoordDiff1,
            Group::Diff1Sq,
            Group::Diff1Diff1,
            Group::Diff1Diff2,
            Group::CoordDiff2,
            Group::Diff2Diff2,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CalculusConfig {
    pub case: Case,
    pub p1: P1,
    pub p2: P2,
    pub reading: Reading,
}

impl Default for CalculusConfig {
    fn default() -> Self {
        CalculusConfig {
            case: Case::I,
            p1: P1::Q2,
            p2: P2::One,
            reading: Reading::Corrected,
        }
    }
}

impl CalculusConfig {
    pub fn new(case: Case, p1: P1, p2: P2) -> Self {
        CalculusConfig {
            case,
            p1,
            p2,
            reading: Reading::Corrected,
        }
    }

    /// The default point (q², 1) of case I.
    pub fn standard() -> Self {
        CalculusConfig::default()
    }

    /// The point (q, q²) of case I.
    pub fn alternate() -> Self {
        CalculusConfig::new(Case::I, P1::Q, P2::Q2)
    }

    pub fn literal(mut self) -> Self {
        self.reading = Reading::Literal;
        self
    }

    pub fn p1_value(&self) -> CycNum {
        self.p1.value()
    }

    pub fn p2_value(&self) -> CycNum {
        self.p2.value()
    }

    pub fn scope(&self) -> Scope {
        Scope {
            p1: Some(self.p1_value()),
            p2: Some(self.p2_value()),
        }
    }

    /// Second-order relations exist only at (q², 1) and (q, q²).
    pub fn admits_second_order(&self) -> bool {
        self.case == Case::I
            && matches!((self.p1, self.p2), (P1::Q2, P2::One) | (P1::Q, P2::Q2))
    }

    pub fn check_groups(&self, groups: &[Group]) -> Result<(), RewriteError> {
        for &g in groups {
            if g.is_second_order() && !self.admits_second_order() {
                return Err(RewriteError::Config(format!(
                    "group {} needs case I with (P1,P2) = (q2,1) or (q,q2); got case {} ({},{})",
                    g.name(),
                    self.case,
                    self.p1.name(),
                    self.p2.name()
                )));
            }
            if g.is_form() && self.case != Case::I {
                return Err(RewriteError::Config(format!(
                    "group {} is only available for case I",
                    g.name()
                )));
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let lit = match self.reading {
            Reading::Corrected => "",
            Reading::Literal => ", literal",
        };
        format!(
            "case {}, P1={}, P2={}{lit}",
            self.case,
            self.p1.name(),
            self.p2.name()
        )
    }
}
