//! Tokenizer and polynomial expression parser shared by `Polynomial::parse`
//! and the session language.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::monomial::Exponent;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, ParseError, Result, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Int(n) => format!("`{n}`"),
            Token::Str(s) => format!("\"{s}\""),
            Token::Sym(c) => format!("`{c}`"),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

const SYMBOLS: &str = "+-*/^()[],;=:";

/// Splits source text into tokens. `#` and `//` start line comments.
pub fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
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
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            let n = digits.parse::<BigInt>().expect("digits parse as integer");
            out.push(Spanned {
                token: Token::Int(n),
                span,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                token: Token::Ident(chars[start..i].iter().collect()),
                span,
            });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if chars.get(i) != Some(&'"') {
                return Err(ParseError::new(span, "unterminated string"));
            }
            let s: String = chars[start..i].iter().collect();
            col += i + 1 - (start - 1);
            i += 1;
            out.push(Spanned {
                token: Token::Str(s),
                span,
            });
            continue;
        }
        if SYMBOLS.contains(c) {
            out.push(Spanned {
                token: Token::Sym(c),
                span,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError::new(span, format!("unexpected character `{c}`")));
    }
    out.push(Spanned {
        token: Token::Eof,
        span: Span { line, column: col },
    });
    Ok(out)
}

/// Cursor over a token stream.
pub struct TokenStream {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl TokenStream {
    pub fn new(tokens: Vec<Spanned>) -> Self {
        TokenStream { tokens, pos: 0 }
    }

    pub fn from_source(src: &str) -> Result<Self, ParseError> {
        Ok(Self::new(tokenize(src)?))
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    pub fn peek_at(&self, offset: usize) -> &Token {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].token
    }

    pub fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    pub fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Token::Eof)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == &Token::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Span), ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Token::Ident(s) => {
                self.bump();
                Ok((s, span))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            self.span(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }
}

/// Polynomial with rational coefficients over a fixed list of variables,
/// produced by the expression parser before it is mapped into a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RawPoly {
    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        RawPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        RawPoly {
            nvars,
            terms: BTreeMap::from([(e, BigRational::from_integer(1.into()))]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&d| d == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add(mut self, other: &RawPoly, sign: i32) -> RawPoly {
        for (e, c) in &other.terms {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            let entry = self
                .terms
                .entry(e.clone())
                .or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
        self
    }

    fn mul(&self, other: &RawPoly) -> Result<RawPoly, String> {
        let mut out = RawPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1
                    .iter()
                    .zip(e2)
                    .map(|(a, b)| {
                        a.checked_add(*b)
                            .ok_or_else(|| "exponent overflow".to_string())
                    })
                    .collect::<Result<Vec<u32>, String>>()?;
                let entry = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        Ok(out)
    }

    fn pow(&self, n: u32) -> Result<RawPoly, String> {
        let mut acc = RawPoly::constant(self.nvars, BigRational::from_integer(1.into()));
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Converts into `ring`, placing raw variable `i` at `var_map[i]`.
    pub fn into_polynomial(&self, ring: &Arc<Ring>, var_map: &[usize]) -> Result<Polynomial> {
        let field = ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut exp = vec![0u32; ring.nvars()];
            for (i, &d) in e.iter().enumerate() {
                exp[var_map[i]] += d;
            }
            terms.push((field.from_rational(c)?, Exponent::new(exp)));
        }
        Polynomial::from_terms(ring, terms)
    }
}

/// Parses an expression over `vars` using `+ - * / ^` and parentheses.
/// Division is only allowed by nonzero constants.
pub fn parse_expr(ts: &mut TokenStream, vars: &[String]) -> Result<RawPoly, ParseError> {
    let n = vars.len();
    let mut acc = if ts.eat_sym('-') {
        RawPoly::constant(n, BigRational::zero()).add(&parse_product(ts, vars)?, -1)
    } else {
        ts.eat_sym('+');
        parse_product(ts, vars)?
    };
    loop {
        if ts.eat_sym('+') {
            acc = acc.add(&parse_product(ts, vars)?, 1);
        } else if ts.eat_sym('-') {
            acc = acc.add(&parse_product(ts, vars)?, -1);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(ts: &mut TokenStream, vars: &[String]) -> Result<RawPoly, ParseError> {
    let mut acc = parse_power(ts, vars)?;
    loop {
        let span = ts.span();
        if ts.eat_sym('*') {
            let rhs = parse_power(ts, vars)?;
            acc = acc.mul(&rhs).map_err(|m| ParseError::new(span, m))?;
        } else if ts.eat_sym('/') {
            let rhs = parse_power(ts, vars)?;
            let Some(d) = rhs.as_constant() else {
                return Err(ParseError::new(
                    span,
                    "division is only allowed by constants",
                ));
            };
            if d.is_zero() {
                return Err(ParseError::new(span, "division by zero"));
            }
            let inv = RawPoly::constant(n_of(&acc), d.recip());
            acc = acc.mul(&inv).map_err(|m| ParseError::new(span, m))?;
        } else {
            return Ok(acc);
        }
    }
}

fn n_of(p: &RawPoly) -> usize {
    p.nvars
}

fn parse_power(ts: &mut TokenStream, vars: &[String]) -> Result<RawPoly, ParseError> {
    let base = parse_atom(ts, vars)?;
    if ts.eat_sym('^') {
        let span = ts.span();
        let Token::Int(e) = ts.peek().clone() else {
            return Err(ts.unexpected("an integer exponent"));
        };
        ts.bump();
        let e = e
            .to_u32()
            .ok_or_else(|| ParseError::new(span, "exponent too large"))?;
        return base.pow(e).map_err(|m| ParseError::new(span, m));
    }
    Ok(base)
}

fn parse_atom(ts: &mut TokenStream, vars: &[String]) -> Result<RawPoly, ParseError> {
    let span = ts.span();
    match ts.peek().clone() {
        Token::Int(n) => {
            ts.bump();
            Ok(RawPoly::constant(vars.len(), BigRational::from_integer(n)))
        }
        Token::Ident(name) => {
            ts.bump();
            match vars.iter().position(|v| *v == name) {
                Some(i) => Ok(RawPoly::var(vars.len(), i)),
                None => Err(ParseError::new(span, format!("unknown variable `{name}`"))),
            }
        }
        Token::Sym('(') => {
            ts.bump();
            let inner = parse_expr(ts, vars)?;
            ts.expect_sym(')')?;
            Ok(inner)
        }
        Token::Sym('-') => {
            ts.bump();
            let inner = parse_power(ts, vars)?;
            Ok(RawPoly::constant(vars.len(), BigRational::zero()).add(&inner, -1))
        }
        _ => Err(ts.unexpected("a number, variable or `(`")),
    }
}

impl Polynomial {
    /// Parses the canonical text form (or any expression in the ring's variables).
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
        let mut ts = TokenStream::from_source(text)?;
        let raw = parse_expr(&mut ts, ring.vars())?;
        if !ts.at_eof() {
            return Err(ts.unexpected("end of polynomial").into());
        }
        let map: Vec<usize> = (0..ring.nvars()).collect();
        raw.into_polynomial(ring, &map).map_err(|e| match e {
            Error::DivisionByZero => Error::Parse(ParseError::new(
                Span { line: 1, column: 1 },
                format!("coefficient not in {}", ring.field()),
            )),
            other => other,
        })
    }
}
