//! Text grammar for ring elements and differentials.
//!
//! ```text
//! element  := term (('+'|'-') term)*
//! term     := rational ('*' mono)* | mono ('*' mono)*
//! mono     := 't' '^' int | 'u' '^' int | 't' | 'u'
//! rational := int | int '/' posint
//! diff     := part (('+'|'-') part)*
//! part     := element 'd(' element ')' | element 'dt' | element 'du'
//! ```
//!
//! A leading sign is accepted before the first term or part. The element in
//! front of `dt`, `du` or `d(...)` is a single term or a parenthesised
//! element, so `t dt + u dt` reads as two parts.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::curve::CurveSpec;
use crate::differential::{f_dg, Differential};
use crate::rational::{fmt_rational, Rational};
use crate::ring::{Monomial, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: expected {expected}")]
    SyntaxError { line: usize, col: usize, expected: String },
    #[error("u^{exponent} at line {line}, column {col} cannot be reduced in this context")]
    GradeOverflow { line: usize, col: usize, exponent: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    T,
    U,
    D,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (tl, tc) = (line, col);
        let simple = match ch {
            't' => Some(Tok::T),
            'u' => Some(Tok::U),
            'd' => Some(Tok::D),
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line: tl, col: tc });
            i += 1;
            col += 1;
        } else if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if ch.is_whitespace() {
            i += 1;
            col += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(n), line: tl, col: tc });
        } else {
            return Err(ParseError::SyntaxError {
                line: tl,
                col: tc,
                expected: "a number, 't', 'u', 'd', an operator or a parenthesis".into(),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

/// A monomial before reduction: `coeff * t^t_exp * u^u_exp`.
#[derive(Debug, Clone)]
struct RawTerm {
    coeff: Rational,
    t_exp: i64,
    u_exp: i64,
    u_pos: Option<(usize, usize)>,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    curve: Option<&'a CurveSpec>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, curve: Option<&'a CurveSpec>) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0, curve })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::SyntaxError { line: t.line, col: t.col, expected: expected.to_string() }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                let v = n.to_i64().ok_or_else(|| self.error("an exponent that fits in 64 bits"))?;
                self.bump();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error("an integer")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error("a number"));
        };
        self.bump();
        if *self.peek() == Tok::Slash {
            self.bump();
            match self.peek().clone() {
                Tok::Int(d) if d.is_positive() => {
                    self.bump();
                    Ok(Rational::new(n, d))
                }
                _ => Err(self.error("a positive denominator")),
            }
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn mono(&mut self, term: &mut RawTerm) -> Result<(), ParseError> {
        let tok = self.bump();
        let exp = if *self.peek() == Tok::Caret {
            self.bump();
            self.int()?
        } else {
            1
        };
        match tok.tok {
            Tok::T => term.t_exp += exp,
            Tok::U => {
                term.u_exp += exp;
                term.u_pos.get_or_insert((tok.line, tok.col));
            }
            _ => unreachable!("mono called on a non-variable"),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut term = RawTerm { coeff: Rational::one(), t_exp: 0, u_exp: 0, u_pos: None };
        match self.peek() {
            Tok::Int(_) => term.coeff = self.rational()?,
            Tok::T | Tok::U => self.mono(&mut term)?,
            _ => return Err(self.error("a number, 't' or 'u'")),
        }
        while *self.peek() == Tok::Star && matches!(self.peek_at(1), Tok::T | Tok::U) {
            self.bump();
            self.mono(&mut term)?;
        }
        Ok(term)
    }

    fn realize(&self, term: RawTerm) -> Result<RingElement, ParseError> {
        if term.u_exp == 0 {
            return Ok(RingElement::term(term.coeff, term.t_exp, 0));
        }
        let (line, col) = term.u_pos.expect("u seen");
        match self.curve {
            Some(curve) if term.u_exp > 0 => {
                Ok(curve.monomial(term.coeff, term.t_exp, term.u_exp as u32))
            }
            _ => Err(ParseError::GradeOverflow { line, col, exponent: term.u_exp }),
        }
    }

    fn sign(&mut self) -> Rational {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                -Rational::one()
            }
            Tok::Plus => {
                self.bump();
                Rational::one()
            }
            _ => Rational::one(),
        }
    }

    fn element(&mut self) -> Result<RingElement, ParseError> {
        let mut sign = if matches!(self.peek(), Tok::Minus) { self.sign() } else { Rational::one() };
        let mut out = RingElement::zero();
        loop {
            let mut term = self.term()?;
            term.coeff *= &sign;
            out += &self.realize(term)?;
            match self.peek() {
                Tok::Plus | Tok::Minus => sign = self.sign(),
                _ => return Ok(out),
            }
        }
    }

    fn part_prefix(&mut self) -> Result<RingElement, ParseError> {
        let prefix = match self.peek() {
            Tok::LParen => {
                self.bump();
                let e = self.element()?;
                self.expect(Tok::RParen, "')'")?;
                e
            }
            Tok::D => RingElement::one(),
            _ => {
                let term = self.term()?;
                self.realize(term)?
            }
        };
        if *self.peek() == Tok::Star && *self.peek_at(1) == Tok::D {
            self.bump();
        }
        Ok(prefix)
    }

    fn part(&mut self, curve: &CurveSpec) -> Result<Differential, ParseError> {
        let f = self.part_prefix()?;
        self.expect(Tok::D, "'dt', 'du' or 'd('")?;
        match self.peek() {
            Tok::T => {
                self.bump();
                Ok(Differential::from_dt(f))
            }
            Tok::U => {
                self.bump();
                Ok(Differential::from_du(f))
            }
            Tok::LParen => {
                self.bump();
                let g = self.element()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f_dg(&f, &g, curve))
            }
            _ => Err(self.error("'t', 'u' or '(' after 'd'")),
        }
    }

    fn differential(&mut self, curve: &CurveSpec) -> Result<Differential, ParseError> {
        let mut sign = if matches!(self.peek(), Tok::Minus) { self.sign() } else { Rational::one() };
        let mut out = Differential::zero();
        loop {
            let part = self.part(curve)?;
            out += &part.scale(&sign);
            match self.peek() {
                Tok::Plus | Tok::Minus => sign = self.sign(),
                _ => return Ok(out),
            }
        }
    }

    fn contains_d(&self) -> bool {
        self.toks.iter().any(|t| t.tok == Tok::D)
    }
}

pub fn parse_element(src: &str, curve: &CurveSpec) -> Result<RingElement, ParseError> {
    let mut p = Parser::new(src, Some(curve))?;
    let e = p.element()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_differential(src: &str, curve: &CurveSpec) -> Result<Differential, ParseError> {
    let mut p = Parser::new(src, Some(curve))?;
    let w = p.differential(curve)?;
    p.finish()?;
    Ok(w)
}

/// Parses a polynomial in `t` alone into coefficients `a_0, ..., a_d`.
pub fn parse_t_polynomial(src: &str) -> Result<Vec<Rational>, ParseError> {
    let mut p = Parser::new(src, None)?;
    let e = p.element()?;
    p.finish()?;
    let mut coeffs = Vec::new();
    for (mono, c) in e.terms() {
        if mono.exp < 0 {
            return Err(ParseError::SyntaxError {
                line: 1,
                col: 1,
                expected: format!("a polynomial in t (found t^{})", mono.exp),
            });
        }
        let k = mono.exp as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Element(RingElement),
    Differential(Differential),
}

/// Parses a differential if the source mentions `d`, otherwise a ring element.
pub fn parse_expression(src: &str, curve: &CurveSpec) -> Result<Expression, ParseError> {
    let probe = Parser::new(src, Some(curve))?;
    if probe.contains_d() {
        parse_differential(src, curve).map(Expression::Differential)
    } else {
        parse_element(src, curve).map(Expression::Element)
    }
}

fn term_body(mono: &Monomial, abs: &Rational) -> String {
    let mut factors = Vec::new();
    match mono.exp {
        0 => {}
        1 => factors.push("t".to_string()),
        e => factors.push(format!("t^{e}")),
    }
    match mono.grade {
        0 => {}
        1 => factors.push("u".to_string()),
        g => factors.push(format!("u^{g}")),
    }
    if factors.is_empty() {
        fmt_rational(abs)
    } else if abs.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", fmt_rational(abs), factors.join("*"))
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, suffix: &str) -> fmt::Result
where
    I: Iterator<Item = (&'a Monomial, &'a Rational, &'a str)>,
{
    let mut first = true;
    for (mono, c, gen) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        write!(f, "{}{}{}", term_body(mono, &abs), suffix, gen)?;
        first = false;
    }
    Ok(())
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write_terms(f, self.terms().map(|(m, c)| (m, c, "")), "")
    }
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 dt");
        }
        let dt = self.dt.terms().map(|(m, c)| (m, c, "dt"));
        let du = self.du.terms().map(|(m, c)| (m, c, "du"));
        write_terms(f, dt.chain(du), " ")
    }
}
