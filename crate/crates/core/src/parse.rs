//! Tokenizer and polynomial expression grammar shared by the script language.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := "-" factor | atom ["^" nat]
//! atom   := integer | ident | "(" expr ")"
//! ```
//! Division is only allowed by nonzero constants.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^()[],;=".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(syntax(l0, c0, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub column: usize,
}

impl Expr {
    fn new(kind: ExprKind, at: (usize, usize)) -> Self {
        Expr {
            kind,
            line: at.0,
            column: at.1,
        }
    }

    pub fn as_ident(&self) -> Option<&str> {
        match &self.kind {
            ExprKind::Ident(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match &self.kind {
            ExprKind::Int(v) => Some(v),
            _ => None,
        }
    }

    /// Identifiers occurring anywhere in the expression.
    pub fn identifiers(&self, out: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Int(_) => {}
            ExprKind::Ident(s) => {
                if !out.contains(s) {
                    out.push(s.clone())
                }
            }
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => a.identifiers(out),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.identifiers(out);
                b.identifiers(out);
            }
        }
    }

    /// Evaluates in `ring`; identifiers must be ring variables.
    pub fn eval(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        Ok(match &self.kind {
            ExprKind::Int(v) => Polynomial::constant(ring, ring.field().from_bigint(v)),
            ExprKind::Ident(s) => Polynomial::var_named(ring, s)
                .ok_or_else(|| syntax(self.line, self.column, format!("unknown variable `{s}`")))?,
            ExprKind::Neg(a) => -&a.eval(ring)?,
            ExprKind::Add(a, b) => &a.eval(ring)? + &b.eval(ring)?,
            ExprKind::Sub(a, b) => &a.eval(ring)? - &b.eval(ring)?,
            ExprKind::Mul(a, b) => &a.eval(ring)? * &b.eval(ring)?,
            ExprKind::Div(a, b) => {
                let d = b.eval(ring)?;
                if !d.is_constant() {
                    return Err(syntax(b.line, b.column, "division by a non-constant"));
                }
                let c = match d.leading_coeff() {
                    Some(c) => c.clone(),
                    None => return Err(syntax(b.line, b.column, "division by zero")),
                };
                let inv = ring
                    .field()
                    .inv(&c)
                    .map_err(|_| syntax(b.line, b.column, "division by zero"))?;
                a.eval(ring)?.scale(&inv)
            }
            ExprKind::Pow(a, e) => a.eval(ring)?.pow(*e),
        })
    }

    /// Value when the expression is a rational constant (no identifiers).
    pub fn eval_rational(&self) -> Option<BigRational> {
        Some(match &self.kind {
            ExprKind::Int(v) => BigRational::from_integer(v.clone()),
            ExprKind::Ident(_) => return None,
            ExprKind::Neg(a) => -a.eval_rational()?,
            ExprKind::Add(a, b) => a.eval_rational()? + b.eval_rational()?,
            ExprKind::Sub(a, b) => a.eval_rational()? - b.eval_rational()?,
            ExprKind::Mul(a, b) => a.eval_rational()? * b.eval_rational()?,
            ExprKind::Div(a, b) => {
                let d = b.eval_rational()?;
                if num_traits::Zero::is_zero(&d) {
                    return None;
                }
                a.eval_rational()? / d
            }
            ExprKind::Pow(a, e) => num_traits::pow(a.eval_rational()?, *e as usize),
        })
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Neg(..) => 2,
            ExprKind::Mul(..) | ExprKind::Div(..) => 3,
            ExprKind::Pow(..) => 4,
            ExprKind::Int(_) | ExprKind::Ident(_) => 5,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(v) => write!(f, "{v}"),
            ExprKind::Ident(s) => f.write_str(s),
            ExprKind::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, a, 3)
            }
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(if matches!(self.kind, ExprKind::Add(..)) { "+" } else { "-" })?;
                write_operand(f, b, 2)
            }
            ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                write_operand(f, a, 3)?;
                f.write_str(if matches!(self.kind, ExprKind::Mul(..)) { "*" } else { "/" })?;
                write_operand(f, b, 4)
            }
            ExprKind::Pow(a, e) => {
                write_operand(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Cursor over a token stream.
pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    pub fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
        Ok(Parser { toks, pos: 0, end })
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    pub fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`{}", self.found())))
        }
    }

    pub fn found(&self) -> String {
        match self.peek() {
            None => ", found end of input".into(),
            Some(Tok::Sym(c)) => format!(", found `{c}`"),
            Some(Tok::Ident(s)) => format!(", found `{s}`"),
            Some(Tok::Int(v)) => format!(", found `{v}`"),
        }
    }

    pub fn ident(&mut self) -> Result<(String, (usize, usize))> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, at))
            }
            _ => Err(self.error(format!("expected identifier{}", self.found()))),
        }
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let at = self.here();
        let mut lhs = if self.eat('-') {
            let t = self.term()?;
            Expr::new(ExprKind::Neg(Box::new(t)), at)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            let at = self.here();
            if self.eat('+') {
                let r = self.term()?;
                lhs = Expr::new(ExprKind::Add(Box::new(lhs), Box::new(r)), at);
            } else if self.eat('-') {
                let r = self.term()?;
                lhs = Expr::new(ExprKind::Sub(Box::new(lhs), Box::new(r)), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let at = self.here();
            if self.eat('*') {
                let r = self.factor()?;
                lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(r)), at);
            } else if self.eat('/') {
                let r = self.factor()?;
                lhs = Expr::new(ExprKind::Div(Box::new(lhs), Box::new(r)), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let at = self.here();
        if self.eat('-') {
            let f = self.factor()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(f)), at));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let eat = self.here();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Int(v)) => {
                    let e: u32 = v
                        .try_into()
                        .map_err(|_| syntax(eat.0, eat.1, "exponent too large"))?;
                    return Ok(Expr::new(ExprKind::Pow(Box::new(base), e), at));
                }
                _ => return Err(syntax(eat.0, eat.1, "expected a natural-number exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::Int(v), at))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::Ident(s), at))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error(format!("expected an expression{}", self.found()))),
        }
    }
}

/// Parses a polynomial in `ring`.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.error(format!("trailing input{}", p.found())));
    }
    e.eval(ring)
}
