//! Recursive-descent parser for ring elements.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := '-'? INT | '(' '-'? INT ')'
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers resolve to table variables or to named definitions supplied in
//! the [`ParseContext`] (for example `v = u*z^-1` on a blowup chart).

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frac::{FactorSet, Frac};
use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(n)) => {
                let n: i64 = n.try_into().map_err(|_| Error::Parse {
                    pos: self.offset(),
                    msg: "exponent too large".into(),
                })?;
                self.pos += 1;
                if neg {
                    -n
                } else {
                    n
                }
            }
            _ => return self.err("exponent must be an integer literal"),
        };
        if paren && !self.eat(')') {
            return self.err("expected `)` after exponent");
        }
        if self.peek() == Some(&Tok::Op('^')) {
            return self.err("chained exponents need parentheses");
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Variables, factor set and named shorthands used to evaluate expressions.
#[derive(Clone, Debug)]
pub struct ParseContext {
    pub factors: Arc<FactorSet>,
    pub definitions: Vec<(String, Frac)>,
}

impl ParseContext {
    pub fn new(factors: &Arc<FactorSet>) -> Self {
        ParseContext { factors: factors.clone(), definitions: vec![] }
    }

    pub fn define(mut self, name: impl Into<String>, value: Frac) -> Self {
        let name = name.into();
        self.definitions.retain(|(n, _)| *n != name);
        self.definitions.push((name, value));
        self
    }

    pub fn eval(&self, e: &Expr) -> Result<Frac> {
        let fs = &self.factors;
        Ok(match e {
            Expr::Int(n) => Frac::constant(fs, Rational::from_integer(n.clone())),
            Expr::Var(name) => {
                if let Some(i) = fs.table().index_of(name) {
                    Frac::var(fs, i)
                } else if let Some((_, v)) = self.definitions.iter().find(|(n, _)| n == name) {
                    v.clone()
                } else {
                    return Err(Error::UnknownVariable(name.clone()));
                }
            }
            Expr::Add(a, b) => self.eval(a)?.try_add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.try_sub(&self.eval(b)?)?,
            Expr::Mul(a, b) => self.eval(a)?.try_mul(&self.eval(b)?)?,
            Expr::Div(a, b) => self.eval(a)?.try_div(&self.eval(b)?)?,
            Expr::Neg(a) => -self.eval(a)?,
            Expr::Pow(a, k) => {
                let k = i32::try_from(*k).map_err(|_| Error::Parse { pos: 0, msg: "exponent too large".into() })?;
                let base = self.eval(a)?;
                base.pow(k).map_err(|err| match err {
                    Error::NotInvertible(s) => Error::DenominatorOutsideFactorSet(s),
                    other => other,
                })?
            }
        })
    }

    pub fn parse(&self, text: &str) -> Result<Frac> {
        self.eval(&parse_ast(text)?)
    }
}

/// Parses `text` over the variables and denominators of `factors`.
pub fn parse_expression(text: &str, factors: &Arc<FactorSet>) -> Result<Frac> {
    ParseContext::new(factors).parse(text)
}
