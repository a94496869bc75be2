use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::{Coefficient, Field};
use super::monomial::Exponent;
use super::ring::{same_ring, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub exp: Exponent,
}

/// Sparse polynomial; terms strictly decreasing in the ring's order, no zero
/// coefficients. The empty term list is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Coefficient) -> Self {
        Self::monomial(ring, c, Exponent::zero(ring.nvars()))
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(
            ring,
            ring.field().one(),
            Exponent::unit(ring.nvars(), index),
        )
    }

    pub fn monomial(ring: &Arc<Ring>, c: Coefficient, exp: Exponent) -> Self {
        debug_assert_eq!(exp.len(), ring.nvars());
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, exp }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Coefficient, Exponent)>) -> Result<Self> {
        let field = ring.field();
        for (c, e) in &terms {
            if e.len() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: e.len(),
                });
            }
            if !field.contains(c) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Self::collect(
            ring,
            terms
                .into_iter()
                .map(|(coeff, exp)| Term { coeff, exp })
                .collect(),
        ))
    }

    fn collect(ring: &Arc<Ring>, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.exp, &a.exp));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.exp == t.exp => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if out.last().is_some_and(|l| field.is_zero(&l.coeff)) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| field.is_zero(&l.coeff)) {
            out.pop();
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms that are already strictly decreasing and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].exp, &w[1].exp) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_zero())
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].exp.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.field().is_one(&self.terms[0].coeff)
    }

    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    pub fn lead_exp(&self) -> Option<&Exponent> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn lead_coeff(&self) -> Option<&Coefficient> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// True if variable `var` occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.exp.get(var) > 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.exp.degree()).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other.terms.iter().cloned()))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.field();
        Ok(self.merge(other.terms.iter().map(|t| Term {
            coeff: field.neg(&t.coeff),
            exp: t.exp.clone(),
        })))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.field();
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &small.terms {
            let shifted = large.terms.iter().map(|u| {
                Ok(Term {
                    coeff: field.mul(&t.coeff, &u.coeff),
                    exp: t.exp.checked_mul(&u.exp)?,
                })
            });
            let shifted: Vec<Term> = shifted.collect::<Result<_>>()?;
            acc = acc.merge(shifted.into_iter());
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(&t.coeff),
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(c, &t.coeff),
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }

    /// `c * x^m * self`; the term order is preserved by monomial multiplication.
    pub fn mul_term(&self, c: &Coefficient, m: &Exponent) -> Result<Polynomial> {
        let field = self.field();
        if field.is_zero(c) {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: field.mul(c, &t.coeff),
                    exp: t.exp.checked_mul(m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self - c * x^m * g`, the elementary reduction step.
    pub fn sub_mul_term(
        &self,
        c: &Coefficient,
        m: &Exponent,
        g: &Polynomial,
    ) -> Result<Polynomial> {
        self.check_ring(g)?;
        let field = self.field();
        let neg_c = field.neg(c);
        let shifted = g
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: field.mul(&neg_c, &t.coeff),
                    exp: t.exp.checked_mul(m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.merge(shifted.into_iter()))
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self
                    .field()
                    .inv(lc)
                    .expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / g`; fails if `g` does not divide `self`.
    pub fn divide_exact(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ring(g)?;
        let lt_g = g.leading_term()?;
        let field = self.field();
        let lc_inv = field.inv(&lt_g.coeff)?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(lt) = rem.terms.first() {
            let Some(m) = lt.exp.checked_div(&lt_g.exp) else {
                return Err(Error::DivisionFailure(format!(
                    "{g} does not divide {self}"
                )));
            };
            let c = field.mul(&lt.coeff, &lc_inv);
            rem = rem.sub_mul_term(&c, &m, g)?;
            quotient.push(Term { coeff: c, exp: m });
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: quotient,
        })
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// `var_map[i]`. Variables mapped to `None` must not occur.
    pub fn map_vars(&self, target: &Arc<Ring>, var_map: &[Option<usize>]) -> Result<Polynomial> {
        if var_map.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: var_map.len(),
            });
        }
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exp = vec![0u32; target.nvars()];
            for (i, &e) in t.exp.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => exp[j] = exp[j].checked_add(e).ok_or(Error::ExponentOverflow)?,
                    None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            terms.push(Term {
                coeff: t.coeff.clone(),
                exp: Exponent::new(exp),
            });
        }
        Ok(Self::collect(target, terms))
    }

    /// Moves the polynomial into `target` by matching variable names.
    pub fn map_by_name(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        self.map_vars(target, &map)
    }

    /// Replaces the assigned variables by field values; the remaining
    /// variables are matched by name in `target`.
    pub fn substitute(
        &self,
        assignment: &HashMap<String, Coefficient>,
        target: &Arc<Ring>,
    ) -> Result<Polynomial> {
        let field = self.field();
        if target.field() != field {
            return Err(Error::RingMismatch);
        }
        let mut values: Vec<Option<&Coefficient>> = Vec::with_capacity(self.ring.nvars());
        let mut var_map: Vec<Option<usize>> = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            match assignment.get(name) {
                Some(c) => {
                    if !field.contains(c) {
                        return Err(Error::RingMismatch);
                    }
                    values.push(Some(c));
                    var_map.push(None);
                }
                None => {
                    values.push(None);
                    var_map.push(target.var_index(name));
                }
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut coeff = t.coeff.clone();
            let mut exp = vec![0u32; target.nvars()];
            for (i, &e) in t.exp.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match (values[i], var_map[i]) {
                    (Some(v), _) => coeff = field.mul(&coeff, &coeff_pow(field, v, e)),
                    (None, Some(j)) => exp[j] = e,
                    (None, None) => {
                        return Err(Error::MissingAssignment(self.ring.vars()[i].clone()))
                    }
                }
            }
            terms.push(Term {
                coeff,
                exp: Exponent::new(exp),
            });
        }
        Ok(Self::collect(target, terms))
    }

    /// Evaluates at a full assignment of the ring's variables.
    pub fn evaluate(&self, assignment: &HashMap<String, Coefficient>) -> Result<Coefficient> {
        let field = self.field();
        let mut acc = field.zero();
        for t in &self.terms {
            let mut c = t.coeff.clone();
            for (i, &e) in t.exp.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.ring.vars()[i];
                let v = assignment
                    .get(name)
                    .ok_or_else(|| Error::MissingAssignment(name.clone()))?;
                c = field.mul(&c, &coeff_pow(field, v, e));
            }
            acc = field.add(&acc, &c);
        }
        Ok(acc)
    }

    /// Merges `other` (already sorted in the ring order) into `self`.
    fn merge(&self, other: impl Iterator<Item = Term>) -> Polynomial {
        let order = self.ring.order();
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = other.peekable();
        loop {
            match (left.peek(), right.peek()) {
                (Some(l), Some(r)) => match order.cmp(&l.exp, &r.exp) {
                    Ordering::Greater => out.push(left.next().unwrap().clone()),
                    Ordering::Less => out.push(right.next().unwrap()),
                    Ordering::Equal => {
                        let l = left.next().unwrap();
                        let r = right.next().unwrap();
                        let c = field.add(&l.coeff, &r.coeff);
                        if !field.is_zero(&c) {
                            out.push(Term {
                                coeff: c,
                                exp: r.exp,
                            });
                        }
                    }
                },
                (Some(_), None) => {
                    out.extend(left.cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(right);
                    break;
                }
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}

fn coeff_pow(field: Field, c: &Coefficient, e: u32) -> Coefficient {
    let mut result = field.one();
    let mut base = c.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = field.mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = field.mul(&base, &base);
        }
    }
    result
}

/// Greatest term of `f`, with an explicit error for the zero polynomial.
pub fn leading_term(f: &Polynomial) -> Result<(Coefficient, Exponent)> {
    f.leading_term().map(|t| (t.coeff.clone(), t.exp.clone()))
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.try_add(g)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.try_mul(g)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let magnitude = if negative {
                field.neg(&t.coeff)
            } else {
                t.coeff.clone()
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let monomial = format_monomial(self.ring.vars(), &t.exp);
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.abs_is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

/// `a*x^2` style rendering; the empty string for the constant monomial.
pub fn format_monomial(vars: &[String], exp: &Exponent) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.iter().zip(exp.as_slice()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::monomial::{MonomialOrder, OrderBlock, PrimitiveOrder};

    fn qring(vars: &[&str]) -> Arc<Ring> {
        Ring::with_order(Field::Rationals, vars, PrimitiveOrder::Lex)
    }

    fn c(field: Field, n: i64) -> Coefficient {
        field.from_i64(n)
    }

    fn x_y(ring: &Arc<Ring>) -> (Polynomial, Polynomial) {
        (Polynomial::var(ring, 0), Polynomial::var(ring, 1))
    }

    /// a, x, y with x,y dominant (lex) and a breaking ties.
    fn family_ring() -> Arc<Ring> {
        let order = MonomialOrder::new(
            3,
            vec![
                OrderBlock::new(vec![1, 2], PrimitiveOrder::Lex),
                OrderBlock::new(vec![0], PrimitiveOrder::Lex),
            ],
        )
        .unwrap();
        Ring::new(
            Field::Rationals,
            vec!["a".into(), "x".into(), "y".into()],
            order,
        )
        .unwrap()
    }

    #[test]
    fn addition_examples() {
        let r = qring(&["x", "y"]);
        let (x, y) = x_y(&r);
        let f = x.try_add(&y).unwrap();
        let g = x.try_sub(&y).unwrap();
        assert_eq!(f.try_add(&g).unwrap().to_string(), "2*x");
        assert!(f.try_add(&f.neg()).unwrap().is_zero());

        let f5 = Ring::with_order(Field::prime(5).unwrap(), &["x"], PrimitiveOrder::Lex);
        let three_x = Polynomial::var(&f5, 0).scale(&c(Field::Prime(5), 3));
        assert_eq!(three_x.try_add(&three_x).unwrap().to_string(), "x");
    }

    #[test]
    fn multiplication_examples() {
        let r = qring(&["x", "y"]);
        let (x, y) = x_y(&r);
        let s = x.try_add(&y).unwrap();
        assert_eq!(s.try_mul(&s).unwrap().to_string(), "x^2 + 2*x*y + y^2");
        assert!(s.try_mul(&Polynomial::zero(&r)).unwrap().is_zero());

        let fr = family_ring();
        let (a, x, y) = (
            Polynomial::var(&fr, 0),
            Polynomial::var(&fr, 1),
            Polynomial::var(&fr, 2),
        );
        let f = a.try_mul(&x).unwrap().try_sub(&y).unwrap();
        assert_eq!(f.try_mul(&y).unwrap().to_string(), "a*x*y - y^2");
    }

    #[test]
    fn ring_mismatch() {
        let (x1, _) = x_y(&qring(&["x", "y"]));
        let (x2, _) = x_y(&qring(&["u", "v"]));
        assert_eq!(x1.try_add(&x2), Err(Error::RingMismatch));
    }

    #[test]
    fn leading_terms() {
        let fr = family_ring();
        let (a, x, y) = (
            Polynomial::var(&fr, 0),
            Polynomial::var(&fr, 1),
            Polynomial::var(&fr, 2),
        );
        let f = a.try_mul(&x).unwrap().try_sub(&y).unwrap();
        let (lc, le) = leading_term(&f).unwrap();
        assert!(Field::Rationals.is_one(&lc));
        assert_eq!(le, Exponent::new(vec![1, 1, 0]));

        // b*y^2 + y + 1 over parameters a, b
        let order = MonomialOrder::new(
            4,
            vec![
                OrderBlock::new(vec![2, 3], PrimitiveOrder::Lex),
                OrderBlock::new(vec![0, 1], PrimitiveOrder::Lex),
            ],
        )
        .unwrap();
        let r = Ring::new(
            Field::Rationals,
            ["a", "b", "x", "y"].map(String::from).to_vec(),
            order,
        )
        .unwrap();
        let b = Polynomial::var(&r, 1);
        let y = Polynomial::var(&r, 3);
        let g = b
            .try_mul(&y.pow(2).unwrap())
            .unwrap()
            .try_add(&y)
            .unwrap()
            .try_add(&Polynomial::one(&r))
            .unwrap();
        assert_eq!(leading_term(&g).unwrap().1, Exponent::new(vec![0, 1, 0, 2]));

        let k = Polynomial::constant(&r, c(Field::Rationals, 7));
        assert_eq!(
            leading_term(&k).unwrap(),
            (c(Field::Rationals, 7), Exponent::zero(4))
        );
        assert_eq!(
            leading_term(&Polynomial::zero(&r)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn substitution() {
        let fr = family_ring();
        let (a, x, y) = (
            Polynomial::var(&fr, 0),
            Polynomial::var(&fr, 1),
            Polynomial::var(&fr, 2),
        );
        let f = a.try_mul(&x).unwrap().try_sub(&y).unwrap();
        let target = qring(&["x", "y"]);
        let at = |v: i64| HashMap::from([("a".to_string(), c(Field::Rationals, v))]);
        assert_eq!(f.substitute(&at(1), &target).unwrap().to_string(), "x - y");
        assert_eq!(f.substitute(&at(0), &target).unwrap().to_string(), "-y");
        let k = Polynomial::constant(&fr, c(Field::Rationals, 3));
        assert_eq!(k.substitute(&at(5), &target).unwrap().to_string(), "3");
        assert_eq!(
            f.substitute(&HashMap::new(), &target),
            Err(Error::MissingAssignment("a".into()))
        );
    }

    #[test]
    fn exact_division() {
        let r = qring(&["x", "y"]);
        let (x, y) = x_y(&r);
        let s = x.try_add(&y).unwrap();
        let sq = s.try_mul(&s).unwrap();
        assert_eq!(sq.divide_exact(&s).unwrap(), s);
        assert!(matches!(
            sq.divide_exact(&x),
            Err(Error::DivisionFailure(_))
        ));
    }

    #[test]
    fn exponent_overflow_is_checked() {
        let r = qring(&["x"]);
        let big = Polynomial::monomial(&r, Field::Rationals.one(), Exponent::new(vec![u32::MAX]));
        assert_eq!(
            big.try_mul(&Polynomial::var(&r, 0)),
            Err(Error::ExponentOverflow)
        );
    }

    #[test]
    fn rational_printing() {
        let r = family_ring();
        let half = Coefficient::Rational(num_rational::BigRational::new(1.into(), 2.into()));
        let f = Polynomial::from_terms(
            &r,
            vec![
                (Field::Rationals.one(), Exponent::new(vec![1, 2, 0])),
                (Field::Rationals.neg(&half), Exponent::new(vec![0, 0, 1])),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "a*x^2 - 1/2*y");
    }
}
