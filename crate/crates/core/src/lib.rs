//! Exact computation in the ℤ₃-graded quantum group GL̃_q(2) over ℚ(ω):
//! normal forms, Hopf structure, the d³ = 0 differential calculus and
//! verification suites for all of it.

pub mod algebra;
pub mod cli;
pub mod cyclotomic;
pub mod diffcalc;
pub mod expr;
pub mod hopf;
pub mod linalg;
pub mod matrix;
pub mod repcheck;
pub mod report;
pub mod rewrite;
pub mod suites;

pub use algebra::{Coord, Element, Form, Generator, TensorElement, Word};
pub use cyclotomic::{q_power, CycNum};
pub use report::{Report, Status};
pub use rewrite::{build_ruleset, normalize, CalculusConfig, Group, RuleSet};
