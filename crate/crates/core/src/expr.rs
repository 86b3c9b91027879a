//! Expression language for elements: `a*d - q*b*g`, `d(a*b)`, `D^-1`, `P1^-1*da`.
//!
//! Precedence, tightest first: `^`, `*`, unary `-`, binary `+`/`-`.
//! Juxtaposition is rejected; products need an explicit `*`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Coord, Element, Generator, Word};
use crate::cyclotomic::{q_power, CycNum, Rational};
use crate::diffcalc::differential::leibniz;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" | "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("parameter {0} has no value in this context")]
    UnboundParameter(&'static str),
    #[error("negative power of a non-invertible expression")]
    NegativePower,
    #[error("d is undefined on words containing z or forms")]
    DifferentialUndefined,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    P1,
    P2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    /// q^k for k = 1 or 2.
    QPow(u8),
    Param(Param),
    Gen(Generator),
    /// The quantum determinant D = a·d − q·β·γ.
    Det,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    D(Box<Expr>),
    D2(Box<Expr>),
}

/// Values for the calculus parameters used while lowering.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    pub p1: Option<CycNum>,
    pub p2: Option<CycNum>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number {r}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = src[start..i].parse().expect("digits");
                let mut den = BigInt::one();
                if i + 1 < b.len() && b[i] == b'/' && b[i + 1].is_ascii_digit() {
                    let s = i + 1;
                    i = s;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = src[s..i].parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            offset: s,
                            expected: vec!["nonzero denominator"],
                            found: "0".into(),
                        });
                    }
                }
                out.push((start, Tok::Num(Rational::new(num, den))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < b.len() && b[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    expected: vec!["token"],
                    found: format!("{ch:?}"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["number", "identifier", "'('", "'-'"];
const AFTER_TERM: &[&str] = &["'+'", "'-'", "'*'", "'^'", "end of input"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        })
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                let n: i64 = match r.to_integer().try_into() {
                    Ok(n) => n,
                    Err(_) => return self.fail(&["small integer exponent"]),
                };
                self.bump();
                Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
            }
            _ => self.fail(&["integer exponent"]),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.offset();
                self.bump();
                let next_is_paren = *self.peek() == Tok::LParen;
                match name.as_str() {
                    "d" | "d2" if next_is_paren => {
                        self.bump();
                        let inner = self.sum()?;
                        self.expect_rparen()?;
                        Ok(if name == "d" {
                            Expr::D(Box::new(inner))
                        } else {
                            Expr::D2(Box::new(inner))
                        })
                    }
                    "q" | "w" => Ok(Expr::QPow(1)),
                    "q2" => Ok(Expr::QPow(2)),
                    "P1" => Ok(Expr::Param(Param::P1)),
                    "P2" => Ok(Expr::Param(Param::P2)),
                    "D" => Ok(Expr::Det),
                    other => match Generator::from_name(other) {
                        Some(g) => Ok(Expr::Gen(g)),
                        None => Err(ParseError {
                            offset: at,
                            expected: vec!["generator or scalar name"],
                            found: format!("identifier {other:?}"),
                        }),
                    },
                }
            }
            _ => self.fail(ATOM_START),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            let mut exp = AFTER_TERM[..4].to_vec();
            exp.push("')'");
            self.fail(&exp)
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return p.fail(AFTER_TERM);
    }
    Ok(e)
}

pub fn determinant() -> Element {
    let ad = Element::word(Word(vec![Generator::C(Coord::A), Generator::C(Coord::D)]));
    let bg = Element::word(Word(vec![Generator::C(Coord::B), Generator::C(Coord::G)]));
    &ad - &bg.scale(&q_power(1))
}

impl Expr {
    /// Lower to an (unnormalized) element.  `d(...)` applies the free graded
    /// Leibniz expansion; normalization is left to the caller.
    pub fn lower(&self, scope: &Scope) -> Result<Element, ExprError> {
        Ok(match self {
            Expr::Num(r) => Element::scalar(CycNum::from_rational(r.clone())),
            Expr::QPow(k) => Element::scalar(q_power(*k as i64)),
            Expr::Param(Param::P1) => {
                Element::scalar(scope.p1.clone().ok_or(ExprError::UnboundParameter("P1"))?)
            }
            Expr::Param(Param::P2) => {
                Element::scalar(scope.p2.clone().ok_or(ExprError::UnboundParameter("P2"))?)
            }
            Expr::Gen(g) => Element::gen(*g),
            Expr::Det => determinant(),
            Expr::Neg(e) => -e.lower(scope)?,
            Expr::Add(a, b) => a.lower(scope)? + b.lower(scope)?,
            Expr::Sub(a, b) => a.lower(scope)? - b.lower(scope)?,
            Expr::Mul(a, b) => a.lower(scope)? * b.lower(scope)?,
            Expr::Pow(base, n) => {
                let n = *n;
                if n >= 0 {
                    base.lower(scope)?.pow(n as u32)
                } else if **base == Expr::Det {
                    Element::gen(Generator::Z).pow(n.unsigned_abs() as u32)
                } else {
                    let b = base.lower(scope)?;
                    let s = b.as_scalar().ok_or(ExprError::NegativePower)?;
                    Element::scalar(s.pow(n).map_err(|_| ExprError::DivisionByZero)?)
                }
            }
            Expr::D(e) => leibniz(&e.lower(scope)?).ok_or(ExprError::DifferentialUndefined)?,
            Expr::D2(e) => {
                let once = leibniz(&e.lower(scope)?).ok_or(ExprError::DifferentialUndefined)?;
                leibniz(&once).ok_or(ExprError::DifferentialUndefined)?
            }
        })
    }
}

/// Parse and lower in one step.
pub fn parse_element(text: &str, scope: &Scope) -> Result<Element, ExprError> {
    Ok(parse_expr(text)?.lower(scope)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::ratio;
    use proptest::prelude::*;

    fn el(s: &str) -> Element {
        parse_element(s, &Scope::default()).unwrap()
    }

    #[test]
    fn determinant_text() {
        assert_eq!(el("a*d - q*b*g"), determinant());
        assert_eq!(el("D"), determinant());
    }

    #[test]
    fn differential_request() {
        assert!(matches!(parse_expr("d(a*b)").unwrap(), Expr::D(_)));
        // d(a·β) = 𝖽a·β + a·𝖽β since p(a) = 0
        assert_eq!(el("d(a*b)"), el("da*b + a*db"));
        // d(γ·a) = 𝖽γ·a + q·γ·𝖽a
        assert_eq!(el("d(g*a)"), el("dg*a + q*g*da"));
        assert_eq!(el("d(d2a)"), Element::zero());
        assert_eq!(el("d2(a)"), el("d2a"));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let e = parse_expr("a*)").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.expected.contains(&"identifier"));
        assert_eq!(parse_expr("a b").unwrap_err().offset, 2);
        assert_eq!(parse_expr("(a+b").unwrap_err().offset, 4);
        assert_eq!(parse_expr("a + $").unwrap_err().offset, 4);
        assert_eq!(parse_expr("foo").unwrap_err().offset, 0);
        assert_eq!(parse_expr("a^b").unwrap_err().offset, 2);
    }

    #[test]
    fn precedence() {
        // -a*b = -(a*b); a^2*b = (a^2)*b
        assert_eq!(el("-a*b"), -el("a*b"));
        assert_eq!(el("a^2*b"), el("a*a*b"));
        assert_eq!(el("1 - a + b"), Element::one() - el("a") + el("b"));
        assert_eq!(el("2*q^2"), Element::scalar(CycNum::int(2) * q_power(2)));
    }

    #[test]
    fn powers_and_scalars() {
        assert_eq!(el("D^-2"), el("z*z"));
        assert_eq!(el("Dinv"), el("z"));
        assert_eq!(el("q^-1"), el("q2"));
        assert_eq!(el("w"), el("q"));
        assert_eq!(el("3/4*a"), Element::coord(Coord::A).scale(&ratio(3, 4).into()));
        let s = Scope {
            p1: Some(q_power(1)),
            p2: Some(q_power(2)),
        };
        assert_eq!(
            parse_element("P1^-1*P2", &s).unwrap(),
            Element::scalar(q_power(1))
        );
        assert_eq!(
            parse_element("P1", &Scope::default()),
            Err(ExprError::UnboundParameter("P1"))
        );
        assert_eq!(parse_element("a^-1", &Scope::default()), Err(ExprError::NegativePower));
        assert_eq!(
            parse_element("d(z*a)", &Scope::default()),
            Err(ExprError::DifferentialUndefined)
        );
    }

    fn any_gen() -> impl Strategy<Value = Generator> {
        (0usize..17).prop_map(|i| Generator::all()[i])
    }

    fn any_element() -> impl Strategy<Value = Element> {
        prop::collection::vec(
            (
                prop::collection::vec(any_gen(), 0..4),
                -4i64..5,
                1i64..4,
                -4i64..5,
            ),
            0..5,
        )
        .prop_map(|v| {
            Element::from_terms(
                v.into_iter()
                    .map(|(w, a, d, b)| (Word(w), CycNum::new(ratio(a, d), ratio(b, 1)))),
            )
        })
    }

    proptest! {
        #[test]
        fn render_round_trip(x in any_element()) {
            let back = parse_element(&x.render(), &Scope::default()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
