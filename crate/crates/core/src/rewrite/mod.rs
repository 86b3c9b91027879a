//! Oriented rewriting for the graded quantum group and its calculi.

pub mod config;
pub mod confluence;
pub mod localize;
pub mod normal;
pub mod ruleset;
pub mod tables;
pub mod textfmt;

use thiserror::Error;

use crate::algebra::Word;
use crate::expr::ExprError;

pub use config::{CalculusConfig, Case, Group, Reading, P1, P2};
pub use confluence::{check_local_confluence, ConfluenceReport, Overlap};
pub use localize::{clear_det, equal_mod_det};
pub use normal::{normalize, Normalizer};
pub use ruleset::{build_ruleset, standard_ruleset, RewriteRule, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("no rule reduces the descending pair in {0}; enable the matching rule group")]
    Unreducible(Word),
    #[error("rule table error: {0}")]
    Table(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
