//! Command-line front end.  `run` returns the exit code and the text for
//! standard output; errors go to the returned message with exit code 2.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{Coord, Element};
use crate::diffcalc::closed_forms;
use crate::diffcalc::differential::differential_n;
use crate::diffcalc::partials::partial_derivatives;
use crate::diffcalc::structure::{structure_matrix, Kind};
use crate::expr::parse_element;
use crate::matrix::render_elem_matrix;
use crate::report::Report;
use crate::rewrite::textfmt::override_tables;
use crate::rewrite::{normalize, standard_ruleset, CalculusConfig, Case, RuleSet, P1, P2};
use crate::suites::{run_all, run_suite};

#[derive(Debug, Parser)]
#[command(name = "gradedq", version, about = "Exact computation in the Z3-graded quantum group GL_q(2) and its d^3 = 0 calculus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Bimodule case of the first-order calculus.
    #[arg(long, global = true, default_value = "I")]
    pub case: Case,
    /// P1, one of q, q2.
    #[arg(long, global = true, default_value = "q2")]
    pub p1: P1,
    /// P2, one of 1, q2.
    #[arg(long, global = true, default_value = "1")]
    pub p2: P2,
    /// Longest word length used by the word-enumerating suites.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_len: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Rule-table file overriding the shipped tables group by group.
    #[arg(long, global = true)]
    pub rules: Option<PathBuf>,
    /// Use table lines exactly as printed instead of the registered corrections.
    #[arg(long, global = true)]
    pub literal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Normalize { expr: String },
    /// d of an expression, in normal form.
    Diff { expr: String },
    /// d applied twice, in normal form.
    Diff2 { expr: String },
    /// Partial derivatives of a coordinate expression.
    Pd { expr: String },
    /// A structure matrix (sigma, tau, mu, mutilde from first principles;
    /// F from its closed form) at a generator.
    Matrix { kind: String, generator: String },
    /// Run one verification suite, or `all`.
    Check { suite: String },
}

/// Parse arguments and execute.  Returns (exit code, standard output,
/// standard error).
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    match execute(&cli) {
        Ok((code, out)) => (code, out, String::new()),
        Err(msg) => (2, String::new(), format!("error: {msg}\n")),
    }
}

fn ruleset(cli: &Cli) -> Result<RuleSet, String> {
    let mut cfg = CalculusConfig::new(cli.case, cli.p1, cli.p2);
    if cli.literal {
        cfg = cfg.literal();
    }
    let rs = standard_ruleset(cfg).map_err(|e| e.to_string())?;
    match &cli.rules {
        None => Ok(rs),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            override_tables(&rs, &text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn element(rs: &RuleSet, text: &str) -> Result<Element, String> {
    parse_element(text, &rs.config().scope()).map_err(|e| e.to_string())
}

fn emit_element(cli: &Cli, input: &str, x: &Element) -> String {
    match cli.format {
        Format::Text => format!("{x}\n"),
        Format::Json => format!("{}\n", json!({"input": input, "result": x.render()})),
    }
}

fn emit_report(cli: &Cli, rep: &Report) -> (i32, String) {
    let code = if rep.passed() { 0 } else { 1 };
    let out = match cli.format {
        Format::Text => rep.to_text(),
        Format::Json => format!("{}\n", rep.to_json()),
    };
    (code, out)
}

fn generator(name: &str) -> Result<Coord, String> {
    Coord::ALL
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| format!("unknown generator {name:?} (expected a, b, g or d)"))
}

fn execute(cli: &Cli) -> Result<(i32, String), String> {
    let rs = ruleset(cli)?;
    match &cli.command {
        Command::Normalize { expr } => {
            let x = normalize(&element(&rs, expr)?, &rs).map_err(|e| e.to_string())?;
            Ok((0, emit_element(cli, expr, &x)))
        }
        Command::Diff { expr } | Command::Diff2 { expr } => {
            let n = if matches!(cli.command, Command::Diff { .. }) { 1 } else { 2 };
            let x = differential_n(&element(&rs, expr)?, n, &rs).map_err(|e| e.to_string())?;
            Ok((0, emit_element(cli, expr, &x)))
        }
        Command::Pd { expr } => {
            let f = normalize(&element(&rs, expr)?, &rs).map_err(|e| e.to_string())?;
            let parts = partial_derivatives(&f, &rs).map_err(|e| e.to_string())?;
            let out = match cli.format {
                Format::Text => Coord::ALL
                    .iter()
                    .zip(&parts)
                    .map(|(c, p)| format!("d_{}: {p}\n", c.name()))
                    .collect(),
                Format::Json => {
                    let mut m = serde_json::Map::new();
                    m.insert("input".into(), json!(expr));
                    for (c, p) in Coord::ALL.iter().zip(&parts) {
                        m.insert(c.name().into(), json!(p.render()));
                    }
                    format!("{}\n", serde_json::Value::Object(m))
                }
            };
            Ok((0, out))
        }
        Command::Matrix { kind, generator: g } => {
            let c = generator(g)?;
            let (text, rows): (String, Vec<Vec<String>>) = if kind == "F" {
                if rs.config().case != Case::I {
                    return Err("F is given for case I only".into());
                }
                let m = closed_forms::f_matrix(c, rs.config()).map_err(|e| e.to_string())?;
                (m.render(), m.to_strings())
            } else {
                let k = Kind::from_name(kind).ok_or_else(|| {
                    format!("unknown matrix kind {kind:?} (expected sigma, tau, mu, mutilde or F)")
                })?;
                let m = structure_matrix(k, &Element::coord(c), &rs).map_err(|e| e.to_string())?;
                let rows = m.iter().map(|r| r.iter().map(Element::render).collect()).collect();
                (render_elem_matrix(&m), rows)
            };
            let out = match cli.format {
                Format::Text => format!("{text}\n"),
                Format::Json => format!("{}\n", json!({"kind": kind, "generator": g, "rows": rows})),
            };
            Ok((0, out))
        }
        Command::Check { suite } => {
            let rep = if suite == "all" {
                run_all(cli.max_len, &rs)
            } else {
                run_suite(suite, cli.max_len, &rs).map_err(|e| e.to_string())?
            };
            Ok(emit_report(cli, &rep))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        run(std::iter::once("gradedq").chain(args.iter().copied()))
    }

    #[test]
    fn normalize_and_pd() {
        let (code, out, _) = call(&["normalize", "d*a"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "a*d - (q-1)*b*g");
        let (_, out, _) = call(&["pd", "a^2"]);
        assert!(out.contains("d_a: -q*a"), "{out}");
        assert!(out.contains("d_b: 0"));
    }

    #[test]
    fn usage_and_parse_errors_exit_two() {
        assert_eq!(call(&["normalize", "a*)"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["check", "partials", "--case", "II"]).0, 2);
        assert_eq!(call(&["matrix", "F", "x"]).0, 2);
        assert_eq!(call(&["normalize", "a", "--p1", "q3"]).0, 2);
    }

    #[test]
    fn json_output() {
        let (code, out, _) = call(&["check", "coinvariance", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["suite"], "coinvariance");
        assert_eq!(v["summary"]["pass"], 4);
        assert_eq!(v["config"]["p1"], "q2");
        let (_, out, _) = call(&["matrix", "mu", "b", "--p2", "q2", "--p1", "q", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"][3][1], "-(q-1)*a");
    }
}
