//! Text syntax for rings, ring elements and series.
//!
//! ```text
//! ring  := "Z" | "Q" | "Z/" NAT | ring "[" gen ("," gen)* "]"
//! gen   := IDENT [":" INT] [";" IDENT "^" NAT]
//! expr  := ["+" | "-"] term (("+" | "-") term)*
//! term  := factor (("*" | "/") factor)*
//! factor:= "-" factor | atom ["^" ["-"] NAT]
//! atom  := NAT | IDENT | "(" expr ")"
//! ```
//!
//! Division is by nonzero constants over `Q`-based rings only; negative
//! exponents apply to the series variable and only where a Laurent series
//! is expected.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Base, Polynomial, Ring, RingDesc, RingElem};
use crate::series::{LaurentSeries, TruncSeries};

/// Parse failure with 1-based position and the set of acceptable tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {}; found {})", self.expected.join(", "), self.found)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// An error at a 1-based position with no expected-token set.
    pub fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            expected: Vec::new(),
            found: String::new(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Nat(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> std::result::Result<Lexer<'a>, ParseError> {
        let mut toks = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Nat(text[start..i].parse().unwrap()), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            } else if "+-*/^()[],:;".contains(c) {
                toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                let ch = text[i..].chars().next().unwrap();
                let (line, column) = position(text, i);
                return Err(ParseError {
                    line,
                    column,
                    expected: Vec::new(),
                    found: format!("'{ch}'"),
                    message: format!("unexpected character '{ch}'"),
                });
            }
        }
        toks.push((Tok::End, text.len()));
        Ok(Lexer { text, toks })
    }
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().unwrap().chars().count() + 1;
    (line, column)
}

struct Parser<'a> {
    lex: Lexer<'a>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> PResult<Parser<'a>> {
        Ok(Parser {
            lex: Lexer::new(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.lex.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.lex.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.lex.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = position(self.lex.text, offset);
        ParseError {
            line,
            column,
            expected: Vec::new(),
            found: self.peek().to_string(),
            message: message.into(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let mut e = self.error_at(self.offset(), format!("unexpected {}", self.peek()));
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        e
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char, expected: &[&str]) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_end(&self) -> PResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    fn nat(&mut self) -> PResult<(BigInt, usize)> {
        let at = self.offset();
        match self.bump() {
            Tok::Nat(n) => Ok((n, at)),
            _ => {
                self.pos -= usize::from(self.pos > 0 && self.lex.toks[self.pos - 1].1 == at);
                Err(self.unexpected(&["number"]))
            }
        }
    }

    fn ident(&mut self) -> PResult<(String, usize)> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, at))
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn small_nat(&mut self, what: &str) -> PResult<(u64, usize)> {
        let (n, at) = self.nat()?;
        let v = n.to_u64().ok_or_else(|| self.error_at(at, format!("{what} {n} is too large")))?;
        Ok((v, at))
    }

    // ring := "Z" | "Q" | "Z/" NAT | ring "[" gen ("," gen)* "]"
    fn ring(&mut self) -> PResult<RingDesc> {
        let at = self.offset();
        let mut desc = match self.peek().clone() {
            Tok::Ident(s) if s == "Q" => {
                self.bump();
                RingDesc::rationals()
            }
            Tok::Ident(s) if s == "Z" => {
                self.bump();
                if self.eat_sym('/') {
                    let (n, nat_at) = self.small_nat("modulus")?;
                    RingDesc::integers_mod(n).map_err(|e| self.error_at(nat_at, e.to_string()))?
                } else {
                    RingDesc::integers()
                }
            }
            _ => {
                let mut e = self.unexpected(&["Z", "Q", "Z/"]);
                e.message = format!("expected a base ring, found {}", self.peek());
                let (line, column) = position(self.lex.text, at);
                e.line = line;
                e.column = column;
                return Err(e);
            }
        };
        while self.eat_sym('[') {
            loop {
                desc = self.generator(desc)?;
                if self.eat_sym(',') {
                    continue;
                }
                self.expect_sym(']', &["','", "']'"])?;
                break;
            }
        }
        Ok(desc)
    }

    // gen := IDENT [":" INT] [";" IDENT "^" NAT]
    fn generator(&mut self, desc: RingDesc) -> PResult<RingDesc> {
        let (name, at) = self.ident()?;
        let mut grade = 0i64;
        if self.eat_sym(':') {
            let neg = self.eat_sym('-');
            let (g, g_at) = self.nat()?;
            let g = g.to_i64().ok_or_else(|| self.error_at(g_at, format!("grade {g} is too large")))?;
            grade = if neg { -g } else { g };
        }
        let mut nilpotency = None;
        if self.eat_sym(';') {
            let (rel, rel_at) = self.ident()?;
            if rel != name {
                return Err(self.error_at(rel_at, format!("relation must be a power of '{name}', found '{rel}'")));
            }
            self.expect_sym('^', &["'^'"])?;
            let (k, k_at) = self.small_nat("relation exponent")?;
            let k = u32::try_from(k).map_err(|_| self.error_at(k_at, "relation exponent is too large"))?;
            nilpotency = Some(k);
        }
        desc.with_generator(&name, grade, nilpotency)
            .map_err(|e| self.error_at(at, e.to_string()))
    }
}

/// Sparse Laurent polynomial in the declared variables.
type Poly = BTreeMap<Vec<i64>, RingElem>;

struct ExprCtx<'a> {
    ring: &'a Ring,
    vars: &'a [&'a str],
    /// Drop terms of total degree at least this (series contexts only).
    truncate: Option<i64>,
    allow_negative: bool,
}

impl ExprCtx<'_> {
    fn constant(&self, c: RingElem) -> Poly {
        let mut p = Poly::new();
        if !c.is_zero() {
            p.insert(vec![0; self.vars.len()], c);
        }
        p
    }

    fn keep(&self, e: &[i64]) -> bool {
        self.truncate.is_none_or(|n| e.iter().sum::<i64>() < n)
    }

    fn add_into(&self, p: &mut Poly, e: Vec<i64>, c: RingElem) {
        if !self.keep(&e) || c.is_zero() {
            return;
        }
        let sum = match p.get(&e) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            p.remove(&e);
        } else {
            p.insert(e, sum);
        }
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (e, c) in b {
            self.add_into(&mut out, e.clone(), c.clone());
        }
        out
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.iter().map(|(e, c)| (e.clone(), -c)).collect()
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_into(&mut out, e, ca * cb);
            }
        }
        out
    }

    fn pow(&self, a: &Poly, k: u64) -> Poly {
        let mut acc = self.constant(RingElem::one(self.ring));
        for _ in 0..k {
            acc = self.mul(&acc, a);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

impl Parser<'_> {
    fn expr(&mut self, ctx: &ExprCtx) -> PResult<Poly> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let mut acc = self.term(ctx)?;
        if neg {
            acc = ctx.neg(&acc);
        }
        loop {
            if self.eat_sym('+') {
                let t = self.term(ctx)?;
                acc = ctx.add(&acc, &t);
            } else if self.eat_sym('-') {
                let t = self.term(ctx)?;
                acc = ctx.add(&acc, &ctx.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ctx: &ExprCtx) -> PResult<Poly> {
        let mut acc = self.factor(ctx)?;
        loop {
            if self.eat_sym('*') {
                let f = self.factor(ctx)?;
                acc = ctx.mul(&acc, &f);
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.offset();
                self.bump();
                if *ctx.ring.base() != Base::Rationals {
                    return Err(self.error_at(at, format!("fractions are only allowed over Q, not {}", ctx.ring)));
                }
                let d_at = self.offset();
                let d = self.factor(ctx)?;
                let zero = vec![0; ctx.vars.len()];
                let c = match (d.len(), d.get(&zero)) {
                    (1, Some(c)) if c.is_constant() => c.constant_coeff(),
                    _ => return Err(self.error_at(d_at, "division is only by nonzero rational constants")),
                };
                let inv = RingElem::from_rational(ctx.ring, c.recip()).expect("Q-algebra");
                acc = ctx.mul(&acc, &ctx.constant(inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ctx: &ExprCtx) -> PResult<Poly> {
        if self.eat_sym('-') {
            let f = self.factor(ctx)?;
            return Ok(ctx.neg(&f));
        }
        let base_at = self.offset();
        let base = self.atom(ctx)?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let neg_at = self.offset();
        let neg = self.eat_sym('-');
        let (k, k_at) = self.small_nat("exponent")?;
        if !neg {
            return Ok(ctx.pow(&base, k));
        }
        if !ctx.allow_negative {
            return Err(self.error_at(neg_at, "negative exponents are only allowed in Laurent series"));
        }
        // only the bare variable may carry a negative exponent
        let bare_var = base.len() == 1
            && base
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().sum::<i64>() == 1 && e.iter().all(|&v| v == 0 || v == 1));
        if !bare_var {
            return Err(self.error_at(base_at, "negative exponents apply only to the series variable"));
        }
        let k = i64::try_from(k).map_err(|_| self.error_at(k_at, "exponent is too large"))?;
        let (e, c) = base.into_iter().next().unwrap();
        let mut out = Poly::new();
        out.insert(e.iter().map(|v| -v * k).collect(), c);
        Ok(out)
    }

    fn atom(&mut self, ctx: &ExprCtx) -> PResult<Poly> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(ctx.constant(RingElem::from_bigint(ctx.ring, n)))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(i) = ctx.vars.iter().position(|v| *v == name) {
                    let mut e = vec![0; ctx.vars.len()];
                    e[i] = 1;
                    let mut p = Poly::new();
                    ctx.add_into(&mut p, e, RingElem::one(ctx.ring));
                    return Ok(p);
                }
                if let Some(i) = ctx.ring.generator_index(&name) {
                    return Ok(ctx.constant(RingElem::generator(ctx.ring, i)));
                }
                let mut expected: Vec<String> = ctx.vars.iter().map(|v| v.to_string()).collect();
                expected.extend(ctx.ring.generators().iter().map(|g| g.name.clone()));
                let (line, column) = position(self.lex.text, at);
                Err(ParseError {
                    line,
                    column,
                    expected,
                    found: format!("identifier '{name}'"),
                    message: format!("unknown identifier '{name}' (not a variable or a generator of {})", ctx.ring),
                })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr(ctx)?;
                self.expect_sym(')', &["')'", "'+'", "'-'", "'*'", "'/'", "'^'"])?;
                Ok(e)
            }
            _ => Err(self.unexpected(&["number", "identifier", "'('", "'-'"])),
        }
    }
}

pub fn parse_ring(text: &str) -> Result<RingDesc> {
    let mut p = Parser::new(text)?;
    let r = p.ring()?;
    p.expect_end()?;
    Ok(r)
}

fn parse_poly(text: &str, ctx: &ExprCtx) -> PResult<Poly> {
    let mut p = Parser::new(text)?;
    let e = p.expr(ctx)?;
    p.expect_end()?;
    Ok(e)
}

pub fn parse_elem(text: &str, ring: &Ring) -> Result<RingElem> {
    let ctx = ExprCtx {
        ring,
        vars: &[],
        truncate: None,
        allow_negative: false,
    };
    let p = parse_poly(text, &ctx)?;
    Ok(p.into_values().next().unwrap_or_else(|| RingElem::zero(ring)))
}

/// A comma-separated list of ring elements; empty text gives an empty list.
pub fn parse_elem_list(text: &str, ring: &Ring) -> Result<Vec<RingElem>> {
    let ctx = ExprCtx {
        ring,
        vars: &[],
        truncate: None,
        allow_negative: false,
    };
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if *p.peek() == Tok::End {
        return Ok(out);
    }
    loop {
        let e = p.expr(&ctx)?;
        out.push(e.into_values().next().unwrap_or_else(|| RingElem::zero(ring)));
        if !p.eat_sym(',') {
            break;
        }
    }
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["','", "end of input"]).into());
    }
    Ok(out)
}

pub fn parse_series(text: &str, ring: &Ring, vars: &[&str], order: u32) -> Result<TruncSeries> {
    check_vars(ring, vars)?;
    let ctx = ExprCtx {
        ring,
        vars,
        truncate: Some(order as i64),
        allow_negative: false,
    };
    let p = parse_poly(text, &ctx)?;
    TruncSeries::from_terms(
        ring,
        vars,
        order,
        p.into_iter().map(|(e, c)| (e.into_iter().map(|v| v as u32).collect(), c)),
    )
}

/// An exact polynomial in `var`, e.g. a divisor equation in `t`.
pub fn parse_polynomial(text: &str, ring: &Ring, var: &str) -> Result<Polynomial> {
    check_vars(ring, &[var])?;
    let vars = [var];
    let ctx = ExprCtx {
        ring,
        vars: &vars,
        truncate: None,
        allow_negative: false,
    };
    let p = parse_poly(text, &ctx)?;
    let top = p.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![RingElem::zero(ring); top + 1];
    for (e, c) in p {
        coeffs[e[0] as usize] = c;
    }
    Polynomial::new(ring, coeffs)
}

/// A Laurent series in `var` known below `x^order`; its lower bound is the
/// smallest exponent written.
pub fn parse_laurent(text: &str, ring: &Ring, var: &str, order: i64) -> Result<LaurentSeries> {
    check_vars(ring, &[var])?;
    let vars = [var];
    let ctx = ExprCtx {
        ring,
        vars: &vars,
        truncate: None,
        allow_negative: true,
    };
    let p = parse_poly(text, &ctx)?;
    let lower = p.keys().map(|e| e[0]).min().unwrap_or(0).min(order - 1);
    LaurentSeries::new(ring, var, lower, order, p.into_iter().map(|(e, c)| (e[0], c)))
}

fn check_vars(ring: &Ring, vars: &[&str]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if !crate::ring::is_identifier(v) {
            return Err(Error::InvalidArgument(format!("'{v}' is not a valid variable name")));
        }
        if ring.generator_index(v).is_some() {
            return Err(Error::InvalidArgument(format!("variable '{v}' is also a generator of {ring}")));
        }
        if vars[..i].contains(v) {
            return Err(Error::InvalidArgument(format!("variable '{v}' listed twice")));
        }
    }
    Ok(())
}

/// Parses a rational number such as `-3/4`, used for scalar flags.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let q = RingDesc::rationals().into_ring();
    let e = parse_elem(text, &q)?;
    if e.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(e.constant_coeff())
}
