//! The d³ = 0 differential calculus: 𝖽, the left coaction, Maurer–Cartan
//! forms, structure matrices and partial derivatives.

pub mod closed_forms;
pub mod coaction;
pub mod differential;
pub mod forms;
pub mod partials;
pub mod structure;

use thiserror::Error;

use crate::algebra::Word;
use crate::expr::ExprError;
use crate::hopf::HopfError;
use crate::linalg::LinError;
use crate::rewrite::RewriteError;

pub use differential::{differential, leibniz};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("d is undefined on z and on forms")]
    Undefined,
    #[error("word {0} does not carry exactly one differential letter")]
    MalformedForm(Word),
    #[error("basis extraction failed: {0}")]
    Basis(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Lin(#[from] LinError),
}
