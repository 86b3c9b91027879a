//! Exact linear solves over ℚ(ω).

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Element, Word};
use crate::cyclotomic::CycNum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has {0} free parameters")]
    Underdetermined(usize),
}

/// Solve A·x = b (A given row-major, `cols` unknowns) for the unique x.
pub fn solve(mut rows: Vec<Vec<CycNum>>, mut rhs: Vec<CycNum>, cols: usize) -> Result<Vec<CycNum>, LinError> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= &d;
                }
                let d = &f * &rhs[r];
                rhs[i] -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return Err(LinError::Inconsistent);
    }
    if pivots.len() < cols {
        return Err(LinError::Underdetermined(cols - pivots.len()));
    }
    let mut x = vec![CycNum::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Ok(x)
}

/// Coefficients x with Σ x_i·cols_i = target, compared word by word.
pub fn solve_in_span(target: &Element, cols: &[Element]) -> Result<Vec<CycNum>, LinError> {
    let mut words: Vec<&Word> = target.words().chain(cols.iter().flat_map(|c| c.words())).collect();
    words.sort();
    words.dedup();
    let rows = words
        .iter()
        .map(|w| cols.iter().map(|c| c.coeff(w)).collect())
        .collect();
    let rhs = words.iter().map(|w| target.coeff(w)).collect();
    solve(rows, rhs, cols.len())
}

/// Inverse of a square matrix, if it exists.
pub fn invert(m: &[Vec<CycNum>]) -> Result<Vec<Vec<CycNum>>, LinError> {
    let n = m.len();
    let mut cols_out = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<CycNum> = (0..n)
            .map(|i| if i == j { CycNum::int(1) } else { CycNum::zero() })
            .collect();
        cols_out.push(solve(m.to_vec(), e, n)?);
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols_out[j][i].clone()).collect())
        .collect())
}
