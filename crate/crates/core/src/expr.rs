//! Parser for rational expressions and maps.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' nonneg_int)?
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! Unary minus applies to a whole factor, so `-x^2` is `-(x^2)`, matching
//! how polynomials are printed. Implicit multiplication is rejected.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{rat_int, ArithError, Poly, Rat, RationalFunction, Vars};
use crate::symplectic::{RationalMap, SymplecticError};

const MAX_EXPONENT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected a polynomial, found a division by {0}")]
    NotPolynomial(String),
    #[error(transparent)]
    Map(#[from] SymplecticError),
}

impl From<ArithError> for ParseError {
    fn from(_: ArithError) -> ParseError {
        ParseError::DivisionByZero
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(usize, usize),
    Ident(usize, usize),
    Op(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a Vars,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = at;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(src.len(), |(p, _)| *p);
            out.push((start, Tok::Int(start, end)));
        } else if c.is_alphabetic() || c == '_' {
            let start = at;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(src.len(), |(p, _)| *p);
            out.push((start, Tok::Ident(start, end)));
        } else {
            let op = match c {
                '−' => '-',
                '·' => '*',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' | ',' => c,
                _ => {
                    return Err(ParseError::Syntax {
                        position: at,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            };
            out.push((at, Tok::Op(op)));
            i += 1;
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a Vars) -> Result<Parser<'a>, ParseError> {
        Ok(Parser {
            src,
            tokens: tokenize(src)?,
            pos: 0,
            vars,
        })
    }

    fn peek(&self) -> Tok {
        self.tokens[self.pos].1
    }

    fn at(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.at(),
            message: message.into(),
        })
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.peek() == Tok::Op(op) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{op}'"))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::Int(..) | Tok::Ident(..) | Tok::Op('(') => {
                self.error("implicit multiplication is not supported; use '*'")
            }
            _ => self.error("unexpected trailing input"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Op('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Tok::Op('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let Tok::Int(s, e) = self.peek() else {
            return self.error("expected a nonnegative integer exponent");
        };
        let exp: u32 = match self.src[s..e].parse() {
            Ok(n) if n <= MAX_EXPONENT => n,
            _ => return self.error(format!("exponent larger than {MAX_EXPONENT}")),
        };
        self.pos += 1;
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Int(s, e) => {
                self.pos += 1;
                Ok(Expr::Int(self.src[s..e].parse().expect("digits")))
            }
            Tok::Ident(s, e) => {
                let name = &self.src[s..e];
                match self.vars.index_of(name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(Expr::Var(i))
                    }
                    None => self.error(format!("unknown variable {name:?}")),
                }
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => self.error("unexpected end of input"),
            _ => self.error("expected a number, a variable or '('"),
        }
    }
}

impl Expr {
    /// Evaluate as a polynomial; only divisions by nonzero constants are allowed.
    pub fn to_poly(&self, vars: &Vars) -> Result<Poly, ParseError> {
        Ok(match self {
            Expr::Int(n) => Poly::constant(vars, rat_int(n.clone())),
            Expr::Var(i) => Poly::var(vars, *i),
            Expr::Neg(a) => -a.to_poly(vars)?,
            Expr::Add(a, b) => &a.to_poly(vars)? + &b.to_poly(vars)?,
            Expr::Sub(a, b) => &a.to_poly(vars)? - &b.to_poly(vars)?,
            Expr::Mul(a, b) => &a.to_poly(vars)? * &b.to_poly(vars)?,
            Expr::Div(a, b) => {
                let d = b.to_poly(vars)?;
                let c: Rat = d.constant_value().ok_or_else(|| ParseError::NotPolynomial(d.to_string()))?;
                if num_traits::Zero::is_zero(&c) {
                    return Err(ParseError::DivisionByZero);
                }
                a.to_poly(vars)?.scale(&c.recip())
            }
            Expr::Pow(a, e) => a.to_poly(vars)?.pow(*e),
        })
    }

    /// Evaluate in `Q(x, y)`.
    pub fn to_rational_function(&self) -> Result<RationalFunction, ParseError> {
        Ok(match self {
            Expr::Int(n) => RationalFunction::constant(rat_int(n.clone())),
            Expr::Var(i) => RationalFunction::coordinate(*i),
            Expr::Neg(a) => a.to_rational_function()?.neg(),
            Expr::Add(a, b) => a.to_rational_function()?.add(&b.to_rational_function()?),
            Expr::Sub(a, b) => a.to_rational_function()?.sub(&b.to_rational_function()?),
            Expr::Mul(a, b) => a.to_rational_function()?.mul(&b.to_rational_function()?),
            Expr::Div(a, b) => a.to_rational_function()?.div(&b.to_rational_function()?)?,
            Expr::Pow(a, e) => a.to_rational_function()?.pow(*e as i64)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(i) => write!(f, "v{i}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

pub fn parse_expr(text: &str, vars: &Vars) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A rational function of `x` and `y`, reduced.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction, ParseError> {
    parse_expr(text, &Vars::affine())?.to_rational_function()
}

/// A polynomial in `x, y`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let vars = Vars::affine();
    parse_expr(text, &vars)?.to_poly(&vars)
}

/// A form in `X, Y, Z` (homogeneity is the caller's concern).
pub fn parse_form(text: &str) -> Result<Poly, ParseError> {
    let vars = Vars::projective();
    parse_expr(text, &vars)?.to_poly(&vars)
}

/// `(f, g)` with `f, g` rational expressions in `x, y`; the map must be dominant.
pub fn parse_map(text: &str) -> Result<RationalMap, ParseError> {
    let vars = Vars::affine();
    let mut p = Parser::new(text, &vars)?;
    p.expect('(')?;
    let f = p.expr()?;
    p.expect(',')?;
    let g = p.expr()?;
    p.expect(')')?;
    p.finish()?;
    Ok(RationalMap::new(f.to_rational_function()?, g.to_rational_function()?)?)
}
