//! Closed-form structure matrices for case I, written in the expression
//! language with `P1`, `P2` bound by the configuration.  The first-principles
//! computations in [`super::structure`] are checked against these.

use crate::algebra::Coord;
use crate::cyclotomic::CycNum;
use crate::expr::{parse_element, ExprError};
use crate::matrix::{CycMatrix, ElemMatrix};
use crate::rewrite::CalculusConfig;

type Table = [[&'static str; 4]; 4];

const SIGMA_A: Table = [
    ["P1*a", "(q2*P2-1)*b", "q*(1-q*P1)*g", "(q2*P2-1)*d"],
    ["0", "a", "0", "(q-1)*g"],
    ["0", "0", "q2*P1^-1*a", "0"],
    ["0", "0", "0", "a"],
];
const SIGMA_B: Table = [
    ["q*P2*b", "0", "0", "0"],
    ["0", "P2*b", "0", "(1-P2)*d"],
    ["0", "0", "q2*P2*b", "0"],
    ["0", "0", "0", "q*P2^-1*b"],
];
const SIGMA_G: Table = [
    ["q2*P1^-1*g", "0", "0", "0"],
    ["0", "q2*g", "0", "0"],
    ["(1-q2*P1)*a", "q*(P2-q)*b", "P1*g", "(P2-q)*d"],
    ["0", "0", "0", "q2*g"],
];
const SIGMA_D: Table = [
    ["q2*P2*d", "0", "0", "0"],
    ["0", "P2^-1*d", "0", "0"],
    ["(q2-1)*P2*b", "0", "q*P2*d", "0"],
    ["0", "(q2-P2)*b", "0", "q2*P2*d"],
];

const TAU_A: Table = [
    ["P1^-1*a", "0", "0", "0"],
    ["(P2^-1-q2)*b", "a", "0", "0"],
    ["(1-q2*P1^-1)*g", "0", "q*P1*a", "0"],
    ["(q*P2^-1-1)*d", "(q-q2)*g", "0", "a"],
];
const TAU_B: Table = [
    ["q*P2^-1*b", "0", "0", "0"],
    ["0", "P2^-1*b", "0", "0"],
    ["0", "0", "q2*P2^-1*b", "0"],
    ["0", "q2*(1-P2^-1)*d", "0", "q*P2*b"],
];
const TAU_G: Table = [
    ["q2*P1*g", "0", "q2*(1-q*P1^-1)*a", "0"],
    ["0", "q*g", "(q*P2^-1-1)*b", "0"],
    ["0", "0", "q2*P1^-1*g", "0"],
    ["0", "0", "q*(q*P2^-1-1)*d", "q2*g"],
];
const TAU_D: Table = [
    ["q*P2^-1*d", "0", "(q-1)*P2^-1*b", "0"],
    ["0", "P2*d", "0", "(1-q2*P2^-1)*b"],
    ["0", "0", "q2*P2^-1*d", "0"],
    ["0", "0", "0", "q*P2^-1*d"],
];

const MU_A: Table = [
    ["P1^-1*a", "0", "(1-q*P1^-1)*b", "0"],
    ["0", "a", "0", "0"],
    ["0", "0", "q*P1*a", "0"],
    ["(q*P2^-1-1)*a", "0", "(P2^-1-q2)*b", "a"],
];
const MU_B: Table = [
    ["q*P2^-1*b", "0", "0", "0"],
    ["0", "P2*b", "0", "0"],
    ["0", "0", "q2*P2^-1*b", "0"],
    ["0", "(1-P2^-1)*a", "0", "q*P2^-1*b"],
];
const MU_G: Table = [
    ["P1^-1*g", "0", "(1-q*P1^-1)*d", "0"],
    ["0", "g", "0", "0"],
    ["0", "0", "q*P1*g", "0"],
    ["(q*P2^-1-1)*g", "0", "(P2^-1-q2)*d", "g"],
];
const MU_D: Table = [
    ["q*P2^-1*d", "0", "0", "0"],
    ["0", "P2*d", "0", "0"],
    ["0", "0", "q2*P2^-1*d", "0"],
    ["0", "(1-P2^-1)*g", "0", "q*P2^-1*d"],
];

const F_A: Table = [
    ["P1^-1", "0", "0", "0"],
    ["0", "1", "0", "0"],
    ["0", "0", "q*P1", "0"],
    ["q*P2^-1-1", "0", "0", "1"],
];
const F_B: Table = [
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "1-P2^-1", "0", "0"],
];
const F_G: Table = [
    ["0", "0", "1-q*P1^-1", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "P2^-1-q2", "0"],
];
const F_D: Table = [
    ["q*P2^-1", "0", "0", "0"],
    ["0", "P2", "0", "0"],
    ["0", "0", "q2*P2^-1", "0"],
    ["0", "0", "0", "q*P2^-1"],
];

fn pick(f: Coord, a: Table, b: Table, g: Table, d: Table) -> Table {
    match f {
        Coord::A => a,
        Coord::B => b,
        Coord::G => g,
        Coord::D => d,
    }
}

fn lower(t: Table, cfg: &CalculusConfig) -> Result<ElemMatrix, ExprError> {
    let scope = cfg.scope();
    t.iter()
        .map(|row| row.iter().map(|s| parse_element(s, &scope)).collect())
        .collect()
}

pub fn sigma(f: Coord, cfg: &CalculusConfig) -> Result<ElemMatrix, ExprError> {
    lower(pick(f, SIGMA_A, SIGMA_B, SIGMA_G, SIGMA_D), cfg)
}

pub fn tau(f: Coord, cfg: &CalculusConfig) -> Result<ElemMatrix, ExprError> {
    lower(pick(f, TAU_A, TAU_B, TAU_G, TAU_D), cfg)
}

pub fn mu(f: Coord, cfg: &CalculusConfig) -> Result<ElemMatrix, ExprError> {
    lower(pick(f, MU_A, MU_B, MU_G, MU_D), cfg)
}

pub fn f_matrix(f: Coord, cfg: &CalculusConfig) -> Result<CycMatrix, ExprError> {
    let m = lower(pick(f, F_A, F_B, F_G, F_D), cfg)?;
    let rows: Vec<Vec<CycNum>> = m
        .iter()
        .map(|r| r.iter().map(|e| e.as_scalar().expect("F entries are scalars")).collect())
        .collect();
    Ok(CycMatrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;
    use crate::cyclotomic::q_power;
    use crate::expr::Scope;

    #[test]
    fn quoted_entries() {
        let cfg = CalculusConfig::standard();
        let el = |s: &str| parse_element(s, &Scope::default()).unwrap();
        // P1 = q², P2 = 1
        assert_eq!(sigma(Coord::A, &cfg).unwrap()[0][0], el("q2*a"));
        assert_eq!(tau(Coord::B, &cfg).unwrap()[0][0], el("q*b"));
        let alt = CalculusConfig::alternate();
        // (1 − P2⁻¹)·a at P2 = q²: 1 − q
        assert_eq!(mu(Coord::B, &alt).unwrap()[3][1], el("(1-q)*a"));
        let fb = f_matrix(Coord::B, &alt).unwrap();
        assert_eq!(fb.get(3, 1), &(&CycNum::int(1) - &q_power(1)));
        let nonzero = fb.rows().iter().flatten().filter(|x| !num_traits::Zero::is_zero(*x)).count();
        assert_eq!(nonzero, 1);
        assert!(mu(Coord::B, &cfg).unwrap()[3][1] == Element::zero());
    }
}
