use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result, Span};
use crate::families::{BlockSpec, FamilyIdeal, FamilyRing, RationalPoint};
use crate::monofam::{MonomialIdealOverPIR, PirBase};
use crate::polycore::text::{parse_expr, RawPoly, Token, TokenStream};
use crate::polycore::{Exponent, Field, Polynomial, PrimitiveOrder, Ring, DEFAULT_PRIME};

/// Settings that the input text does not fix by itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    /// Characteristic used for a bare `Fp`.
    pub default_prime: u64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            default_prime: DEFAULT_PRIME,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SessionRing {
    Family(Arc<FamilyRing>),
    Monomial { base: PirBase, vars: Vec<String> },
}

#[derive(Clone, Debug)]
pub enum NamedIdeal {
    Family(FamilyIdeal),
    Monomial(MonomialIdealOverPIR),
}

/// A parsed input file with every name resolved.
#[derive(Clone, Debug)]
pub struct Session {
    ring: SessionRing,
    ideals: Vec<(String, NamedIdeal)>,
    points: Vec<(String, RationalPoint)>,
    primes: Vec<(String, Vec<Polynomial>)>,
}

impl Session {
    pub fn ring(&self) -> &SessionRing {
        &self.ring
    }

    pub fn family(&self) -> Option<&Arc<FamilyRing>> {
        match &self.ring {
            SessionRing::Family(f) => Some(f),
            SessionRing::Monomial { .. } => None,
        }
    }

    pub fn ideals(&self) -> &[(String, NamedIdeal)] {
        &self.ideals
    }

    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn point(&self, name: &str) -> Option<&RationalPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn prime(&self, name: &str) -> Option<&[Polynomial]> {
        self.primes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.as_slice())
    }

    pub fn point_names(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|(n, _)| n.as_str())
    }

    pub fn prime_names(&self) -> impl Iterator<Item = &str> {
        self.primes.iter().map(|(n, _)| n.as_str())
    }
}

pub fn parse_session(text: &str) -> Result<Session> {
    parse_session_with(text, &ParseOptions::default())
}

pub fn parse_session_with(text: &str, options: &ParseOptions) -> Result<Session> {
    let mut p = Parser {
        ts: TokenStream::from_source(text)?,
        options: *options,
        decl: None,
        base: Vec::new(),
        orders: Vec::new(),
        ring: None,
        ideals: Vec::new(),
        points: Vec::new(),
        primes: Vec::new(),
    };
    p.session()?;
    let ring = match p.ring.take() {
        Some(r) => r,
        None => p.build_ring(p.ts.span())?,
    };
    Ok(Session {
        ring,
        ideals: p.ideals,
        points: p.points,
        primes: p.primes,
    })
}

enum FieldDecl {
    Field(Field),
    Pir(PirBase),
}

struct RingDecl {
    field: FieldDecl,
    params: Vec<String>,
    mains: Vec<String>,
}

struct Parser {
    ts: TokenStream,
    options: ParseOptions,
    decl: Option<RingDecl>,
    base: Vec<(RawPoly, Span)>,
    orders: Vec<(BlockSpec, Span)>,
    ring: Option<SessionRing>,
    ideals: Vec<(String, NamedIdeal)>,
    points: Vec<(String, RationalPoint)>,
    primes: Vec<(String, Vec<Polynomial>)>,
}

fn perr(span: Span, message: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(span, message))
}

/// Replaces field-level failures with a diagnostic at `span`.
fn at_span(span: Span, field: &str, e: Error) -> Error {
    match e {
        Error::DivisionByZero => perr(span, format!("coefficient not in {field}")),
        Error::Parse(p) => Error::Parse(p),
        other => perr(span, other.to_string()),
    }
}

impl Parser {
    fn session(&mut self) -> Result<()> {
        while !self.ts.at_eof() {
            let (kw, span) = self.ts.expect_ident()?;
            match kw.as_str() {
                "ring" => self.ring_stmt(span)?,
                "base" => self.base_stmt(span)?,
                "order" => self.order_stmt(span)?,
                "ideal" => self.ideal_stmt()?,
                "point" => self.point_stmt()?,
                "prime" => self.prime_stmt()?,
                other => {
                    return Err(perr(
                        span,
                        format!("unknown statement `{other}`; expected ring, base, order, ideal, point or prime"),
                    ))
                }
            }
        }
        Ok(())
    }

    fn end_stmt(&mut self) -> Result<()> {
        self.ts.expect_sym(';').map_err(Error::from)
    }

    fn ring_stmt(&mut self, span: Span) -> Result<()> {
        if self.decl.is_some() {
            return Err(perr(span, "ring declared twice"));
        }
        let field = self.field()?;
        let params = self.var_list()?;
        let mains = self.var_list()?;
        for v in &mains {
            if params.contains(v) {
                return Err(perr(
                    span,
                    format!("`{v}` is both a parameter and a variable"),
                ));
            }
        }
        let mut seen = Vec::new();
        for v in params.iter().chain(&mains) {
            if seen.contains(&v) {
                return Err(perr(span, format!("variable `{v}` declared twice")));
            }
            seen.push(v);
        }
        if matches!(field, FieldDecl::Pir(_)) && !params.is_empty() {
            return Err(perr(
                span,
                "rings over Z or Zmod(n) take no parameters; write Z[][x, y]",
            ));
        }
        self.end_stmt()?;
        self.decl = Some(RingDecl {
            field,
            params,
            mains,
        });
        Ok(())
    }

    fn int_arg(&mut self) -> Result<(BigInt, Span)> {
        self.ts.expect_sym('(')?;
        let span = self.ts.span();
        let Token::Int(n) = self.ts.peek().clone() else {
            return Err(self.ts.unexpected("an integer").into());
        };
        self.ts.bump();
        self.ts.expect_sym(')')?;
        Ok((n, span))
    }

    fn field(&mut self) -> Result<FieldDecl> {
        let (name, span) = self.ts.expect_ident()?;
        match name.as_str() {
            "Q" => Ok(FieldDecl::Field(Field::Rationals)),
            "Fp" => {
                let p = if self.ts.peek() == &Token::Sym('(') {
                    let (n, s) = self.int_arg()?;
                    u64::try_from(&n)
                        .map_err(|_| perr(s, format!("characteristic {n} is out of range")))?
                } else {
                    self.options.default_prime
                };
                Field::prime(p)
                    .map(FieldDecl::Field)
                    .map_err(|e| perr(span, e.to_string()))
            }
            "Z" => Ok(FieldDecl::Pir(PirBase::Integers)),
            "Zmod" => {
                let (n, s) = self.int_arg()?;
                PirBase::modular(n)
                    .map(FieldDecl::Pir)
                    .map_err(|e| perr(s, e.to_string()))
            }
            other => Err(perr(
                span,
                format!("unknown coefficient ring `{other}`; expected Q, Fp(p), Z or Zmod(n)"),
            )),
        }
    }

    fn var_list(&mut self) -> Result<Vec<String>> {
        self.ts.expect_sym('[')?;
        let mut out = Vec::new();
        if self.ts.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(self.ts.expect_ident()?.0);
            if self.ts.eat_sym(']') {
                return Ok(out);
            }
            self.ts.expect_sym(',')?;
        }
    }

    fn decl(&self, span: Span) -> Result<&RingDecl> {
        self.decl
            .as_ref()
            .ok_or_else(|| perr(span, "the ring must be declared first"))
    }

    fn check_open(&self, span: Span, what: &str) -> Result<()> {
        if self.ring.is_some() {
            return Err(perr(
                span,
                format!("`{what}` must come before ideals, points and primes"),
            ));
        }
        Ok(())
    }

    /// `( expr, ... )` over `vars`; each expression with its span.
    fn generator_list(&mut self, vars: &[String]) -> Result<Vec<(RawPoly, Span)>> {
        self.ts.expect_sym('(')?;
        let mut out = Vec::new();
        if self.ts.eat_sym(')') {
            return Ok(out);
        }
        loop {
            let span = self.ts.span();
            out.push((parse_expr(&mut self.ts, vars)?, span));
            if self.ts.eat_sym(')') {
                return Ok(out);
            }
            self.ts.expect_sym(',')?;
        }
    }

    fn base_stmt(&mut self, span: Span) -> Result<()> {
        self.check_open(span, "base")?;
        let decl = self.decl(span)?;
        if matches!(decl.field, FieldDecl::Pir(_)) {
            return Err(perr(
                span,
                "base relations need a parameter ring over a field",
            ));
        }
        let params = decl.params.clone();
        let gens = self.generator_list(&params)?;
        self.end_stmt()?;
        self.base.extend(gens);
        Ok(())
    }

    fn order_stmt(&mut self, span: Span) -> Result<()> {
        self.check_open(span, "order")?;
        self.decl(span)?;
        if !self.orders.is_empty() {
            return Err(perr(span, "order declared twice"));
        }
        loop {
            let (kind_name, kspan) = self.ts.expect_ident()?;
            let kind = PrimitiveOrder::from_name(&kind_name).ok_or_else(|| {
                perr(
                    kspan,
                    format!("unknown order `{kind_name}`; expected lex, grlex or grevlex"),
                )
            })?;
            self.ts.expect_sym('(')?;
            let mut vars = Vec::new();
            loop {
                vars.push(self.ts.expect_ident()?.0);
                if self.ts.eat_sym(')') {
                    break;
                }
                self.ts.expect_sym(',')?;
            }
            self.orders.push((
                BlockSpec {
                    kind,
                    ranking: vars,
                },
                kspan,
            ));
            if !self.ts.eat_sym(',') {
                break;
            }
        }
        self.end_stmt()
    }

    fn build_ring(&self, span: Span) -> Result<SessionRing> {
        let decl = self.decl(span)?;
        match &decl.field {
            FieldDecl::Pir(base) => {
                for (spec, s) in &self.orders {
                    if spec.ranking.iter().any(|v| !decl.mains.contains(v)) {
                        return Err(perr(*s, "order names an undeclared variable"));
                    }
                }
                Ok(SessionRing::Monomial {
                    base: base.clone(),
                    vars: decl.mains.clone(),
                })
            }
            FieldDecl::Field(field) => {
                let mut main_order = BlockSpec::lex(&decl.mains);
                let mut param_order = BlockSpec::lex(&decl.params);
                for (spec, s) in &self.orders {
                    let all_main = spec.ranking.iter().all(|v| decl.mains.contains(v));
                    let all_param = spec.ranking.iter().all(|v| decl.params.contains(v));
                    let sorted = |v: &[String]| {
                        let mut v = v.to_vec();
                        v.sort();
                        v
                    };
                    let covers = |names: &[String]| sorted(&spec.ranking) == sorted(names);
                    if all_main && covers(&decl.mains) {
                        main_order = spec.clone();
                    } else if all_param && covers(&decl.params) {
                        param_order = spec.clone();
                    } else {
                        return Err(perr(
                            *s,
                            "each order block must list exactly the variables or exactly the parameters",
                        ));
                    }
                }
                let param_ring = Ring::new(
                    *field,
                    decl.params.clone(),
                    crate::polycore::MonomialOrder::lex(decl.params.len()),
                )?;
                let field_name = field.to_string();
                let ident: Vec<usize> = (0..decl.params.len()).collect();
                let mut base = Vec::new();
                for (raw, s) in &self.base {
                    base.push(
                        raw.into_polynomial(&param_ring, &ident)
                            .map_err(|e| at_span(*s, &field_name, e))?,
                    );
                }
                let fam = FamilyRing::new(
                    *field,
                    decl.params.clone(),
                    decl.mains.clone(),
                    main_order,
                    param_order,
                    &base,
                )
                .map_err(|e| at_span(span, &field_name, e))?;
                Ok(SessionRing::Family(fam))
            }
        }
    }

    fn freeze(&mut self, span: Span) -> Result<SessionRing> {
        if self.ring.is_none() {
            self.ring = Some(self.build_ring(span)?);
        }
        Ok(self.ring.clone().expect("just built"))
    }

    fn fresh_name(&mut self) -> Result<(String, Span)> {
        let (name, span) = self.ts.expect_ident()?;
        let taken = self.ideals.iter().any(|(n, _)| *n == name)
            || self.points.iter().any(|(n, _)| *n == name)
            || self.primes.iter().any(|(n, _)| *n == name);
        if taken {
            return Err(perr(span, format!("name `{name}` is already defined")));
        }
        Ok((name, span))
    }

    fn ideal_stmt(&mut self) -> Result<()> {
        let (name, span) = self.fresh_name()?;
        let ring = self.freeze(span)?;
        self.ts.expect_sym('=')?;
        let ideal = match ring {
            SessionRing::Family(fam) => {
                let vars = fam.total_ring().vars().to_vec();
                let raw = self.generator_list(&vars)?;
                let field_name = fam.field().to_string();
                let ident: Vec<usize> = (0..vars.len()).collect();
                let mut gens = Vec::new();
                for (r, s) in raw {
                    gens.push(
                        r.into_polynomial(fam.total_ring(), &ident)
                            .map_err(|e| at_span(s, &field_name, e))?,
                    );
                }
                NamedIdeal::Family(FamilyIdeal::new(&fam, gens)?)
            }
            SessionRing::Monomial { base, vars } => {
                let raw = self.generator_list(&vars)?;
                let mut terms = Vec::new();
                for (r, s) in raw {
                    let mut it = r.terms();
                    match (it.next(), it.next()) {
                        (None, _) => {}
                        (Some((e, c)), None) if c.is_integer() => {
                            terms.push((c.to_integer(), Exponent::new(e.clone())))
                        }
                        _ => {
                            return Err(perr(
                                s,
                                "generators over Z or Zmod(n) must be single terms with integer coefficients",
                            ))
                        }
                    }
                }
                NamedIdeal::Monomial(MonomialIdealOverPIR::new(base, vars, terms)?)
            }
        };
        self.end_stmt()?;
        self.ideals.push((name, ideal));
        Ok(())
    }

    fn param_family(&mut self, span: Span, what: &str) -> Result<Arc<FamilyRing>> {
        match self.freeze(span)? {
            SessionRing::Family(f) => Ok(f),
            SessionRing::Monomial { .. } => Err(perr(
                span,
                format!("`{what}` needs a parameter ring over a field"),
            )),
        }
    }

    fn point_stmt(&mut self) -> Result<()> {
        let (name, span) = self.fresh_name()?;
        let fam = self.param_family(span, "point")?;
        self.ts.expect_sym(':')?;
        let mut raw = Vec::new();
        loop {
            let (var, vspan) = self.ts.expect_ident()?;
            self.ts.expect_sym('=')?;
            let espan = self.ts.span();
            let value = parse_expr(&mut self.ts, &[])?;
            raw.push((var, vspan, value, espan));
            if !self.ts.eat_sym(',') {
                break;
            }
        }
        self.end_stmt()?;
        let point = point_from_raw(&fam, raw).map_err(|e| match e {
            Error::Parse(p) => Error::Parse(p),
            other => perr(span, other.to_string()),
        })?;
        self.points.push((name, point));
        Ok(())
    }

    fn prime_stmt(&mut self) -> Result<()> {
        let (name, span) = self.fresh_name()?;
        let fam = self.param_family(span, "prime")?;
        self.ts.expect_sym('=')?;
        let params = fam.params().to_vec();
        let raw = self.generator_list(&params)?;
        self.end_stmt()?;
        let field_name = fam.field().to_string();
        let ident: Vec<usize> = (0..params.len()).collect();
        let mut gens = Vec::new();
        for (r, s) in raw {
            gens.push(
                r.into_polynomial(fam.param_ring(), &ident)
                    .map_err(|e| at_span(s, &field_name, e))?,
            );
        }
        self.primes.push((name, gens));
        Ok(())
    }
}

type RawAssignment = (String, Span, RawPoly, Span);

fn point_from_raw(fam: &FamilyRing, raw: Vec<RawAssignment>) -> Result<RationalPoint> {
    let field = fam.field();
    let mut values = HashMap::new();
    for (var, vspan, value, espan) in raw {
        if !fam.params().contains(&var) {
            return Err(perr(vspan, format!("`{var}` is not a parameter")));
        }
        if values.contains_key(&var) {
            return Err(perr(vspan, format!("`{var}` assigned twice")));
        }
        let c = value
            .as_constant()
            .ok_or_else(|| perr(espan, "point coordinates must be constants"))?;
        let c = field
            .from_rational(&c)
            .map_err(|e| at_span(espan, &field.to_string(), e))?;
        values.insert(var, c);
    }
    RationalPoint::new(fam, values)
}

/// Reads `a=1, b=-1/2` as a point of `fam`.
pub fn parse_assignment(fam: &FamilyRing, text: &str) -> Result<RationalPoint> {
    let mut ts = TokenStream::from_source(text)?;
    let mut raw = Vec::new();
    if !ts.at_eof() {
        loop {
            let (var, vspan) = ts.expect_ident()?;
            ts.expect_sym('=')?;
            let espan = ts.span();
            let value = parse_expr(&mut ts, &[])?;
            raw.push((var, vspan, value, espan));
            if !ts.eat_sym(',') {
                break;
            }
        }
    }
    if !ts.at_eof() {
        return Err(ts.unexpected("`,` or end of assignment").into());
    }
    point_from_raw(fam, raw)
}

/// Reads `(g1, g2)` or a bare `g1, g2` over the parameters.
pub fn parse_param_list(fam: &FamilyRing, text: &str) -> Result<Vec<Polynomial>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .filter(|s| balanced(s))
        .unwrap_or(trimmed);
    let mut ts = TokenStream::from_source(inner)?;
    let params = fam.params().to_vec();
    let ident: Vec<usize> = (0..params.len()).collect();
    let mut out = Vec::new();
    if ts.at_eof() {
        return Ok(out);
    }
    loop {
        let span = ts.span();
        let raw = parse_expr(&mut ts, &params)?;
        out.push(
            raw.into_polynomial(fam.param_ring(), &ident)
                .map_err(|e| at_span(span, &fam.field().to_string(), e))?,
        );
        if !ts.eat_sym(',') {
            break;
        }
    }
    if !ts.at_eof() {
        return Err(ts.unexpected("`,` or end of list").into());
    }
    Ok(out.into_iter().filter(|g| !g.is_zero()).collect())
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// A single parameter polynomial.
pub fn parse_param_poly(fam: &FamilyRing, text: &str) -> Result<Polynomial> {
    let mut ts = TokenStream::from_source(text)?;
    let span = ts.span();
    let raw = parse_expr(&mut ts, fam.params())?;
    if !ts.at_eof() {
        return Err(ts.unexpected("end of polynomial").into());
    }
    let ident: Vec<usize> = (0..fam.params().len()).collect();
    raw.into_polynomial(fam.param_ring(), &ident)
        .map_err(|e| at_span(span, &fam.field().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex1_session() {
        let s =
            parse_session("ring Q[a][x,y]; order lex(x,y), lex(a); ideal I = (a*x - y);").unwrap();
        let fam = s.family().unwrap();
        assert_eq!(fam.params(), ["a"]);
        assert_eq!(fam.mains(), ["x", "y"]);
        assert!(matches!(s.ideal("I"), Some(NamedIdeal::Family(_))));
    }

    #[test]
    fn fractex_session() {
        let s = parse_session("ring Q[a,b][x]; base (a*b); ideal I = (a*x + 1);").unwrap();
        assert!(s.family().unwrap().has_base());
    }

    #[test]
    fn point_violating_base() {
        let err = parse_session("ring Q[a][x,y]; base (a^2);\npoint P: a=1;").unwrap_err();
        let Error::Parse(p) = err else {
            panic!("{err:?}")
        };
        assert_eq!(p.span, Span { line: 2, column: 7 });
        assert!(p.message.contains("base relation"), "{}", p.message);
    }

    #[test]
    fn diagnostics_carry_spans() {
        let Error::Parse(p) = parse_session("ring Q[a][x];\nideal I = (a*z);").unwrap_err() else {
            panic!()
        };
        assert_eq!(
            p.span,
            Span {
                line: 2,
                column: 14
            }
        );
        assert!(p.message.contains("unknown variable `z`"));

        let Error::Parse(p) = parse_session("ring Fp(7)[a][x];\nideal I = (x/7);").unwrap_err()
        else {
            panic!()
        };
        assert!(
            p.message.contains("coefficient not in Fp(7)"),
            "{}",
            p.message
        );

        let Error::Parse(p) = parse_session("ring Q[a][x]; ideal I = (x); base (a);").unwrap_err()
        else {
            panic!()
        };
        assert!(p.message.contains("must come before"));
        assert!(parse_session("ideal I = (x);").unwrap_err().is_parse());
        assert!(parse_session("ring Fp(8)[a][x];").unwrap_err().is_parse());
    }

    #[test]
    fn default_prime_and_orders() {
        let s = parse_session_with("ring Fp[a][x];", &ParseOptions { default_prime: 101 }).unwrap();
        assert_eq!(s.family().unwrap().field(), Field::Prime(101));
        let s = parse_session("ring Q[a][x,y]; order grevlex(y,x);").unwrap();
        assert_eq!(
            s.family().unwrap().main_order().kind,
            PrimitiveOrder::GrevLex
        );
        assert!(parse_session("ring Q[a][x,y]; order lex(x,a);").is_err());
    }

    #[test]
    fn monomial_session() {
        let s = parse_session("ring Z[][x,y]; ideal J = (9*x, 2*y, x^2, y^2);").unwrap();
        let Some(NamedIdeal::Monomial(j)) = s.ideal("J") else {
            panic!()
        };
        assert_eq!(j.to_string(), "(9*x, 2*y, x^2, y^2)");
        assert!(parse_session("ring Z[][x,y]; ideal J = (x + y);").is_err());
        assert!(parse_session("ring Z[a][x];").is_err());
        let s = parse_session("ring Zmod(18)[][x,y]; ideal J = (9*x, 2*y, x^2, y^2);").unwrap();
        assert!(matches!(s.ring(), SessionRing::Monomial { .. }));
    }

    #[test]
    fn assignments_and_lists() {
        let s = parse_session("ring Q[a,b][x]; base (a*b);").unwrap();
        let fam = s.family().unwrap();
        let p = parse_assignment(fam, "a=0, b = -1/2").unwrap();
        assert_eq!(p.describe(fam), "a=0, b=-1/2");
        assert!(parse_assignment(fam, "a=1, b=1").is_err());
        assert!(parse_assignment(fam, "a=1").is_err());
        assert_eq!(parse_param_list(fam, "(a, b - 1)").unwrap().len(), 2);
        assert_eq!(parse_param_list(fam, "(a - 1)*(b)").unwrap().len(), 1);
    }
}
