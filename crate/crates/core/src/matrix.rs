//! Small square matrices over ℚ(ω) and over the free algebra.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::Element;
use crate::cyclotomic::CycNum;

#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    n: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(n: usize) -> Self {
        CycMatrix {
            n,
            data: vec![CycNum::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CycMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, CycNum::one());
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        CycMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<CycNum>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &CycNum) -> Self {
        CycMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, o: &CycMatrix) -> Self {
        assert_eq!(self.n, o.n);
        CycMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &CycMatrix) -> Self {
        assert_eq!(self.n, o.n);
        CycMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Ordinary matrix product.
    pub fn mul(&self, o: &CycMatrix) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = CycMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = CycNum::zero();
                for k in 0..n {
                    s += &(self.get(i, k) * o.get(k, j));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn commutator(&self, o: &CycMatrix) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Rows of canonical `a+b*w` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .data
            .chunks(self.n)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.render_q()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Square matrix of algebra elements, indexed `[row][col]`.
pub type ElemMatrix = Vec<Vec<Element>>;

pub fn elem_matrix_zero(n: usize) -> ElemMatrix {
    vec![vec![Element::zero(); n]; n]
}

pub fn render_elem_matrix(m: &ElemMatrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| x.render()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    rows.join("\n")
}
