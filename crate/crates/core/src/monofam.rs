//! Monomial ideals over `Z` and `Z/n`.
//!
//! Ideals of the base are principal and are written by their nonnegative
//! generator: `|c|` over `Z`, `gcd(c, n)` over `Z/n`, with `0` for the zero
//! ideal in both cases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::families::{render_staircase, Window};
use crate::polycore::coeff::is_prime;
use crate::polycore::{format_monomial, Exponent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PirBase {
    Integers,
    Modular(BigInt),
}

impl PirBase {
    pub fn modular(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::precondition(format!(
                "modulus {n} must be at least 2"
            )));
        }
        Ok(PirBase::Modular(n))
    }

    /// Normal-form generator of `(c)`.
    pub fn normalize(&self, c: &BigInt) -> BigInt {
        match self {
            PirBase::Integers => c.abs(),
            PirBase::Modular(n) => {
                let g = c.mod_floor(n).gcd(n);
                if &g == n {
                    BigInt::zero()
                } else {
                    g
                }
            }
        }
    }

    /// `(c) ⊆ (d)`.
    fn contained(&self, c: &BigInt, d: &BigInt) -> bool {
        if d.is_zero() {
            c.is_zero()
        } else {
            c.is_multiple_of(d)
        }
    }
}

impl fmt::Display for PirBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PirBase::Integers => write!(f, "Z"),
            PirBase::Modular(n) => write!(f, "Zmod({n})"),
        }
    }
}

/// An ideal of `B[x]` generated by terms `c x^E`, kept minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdealOverPIR {
    base: PirBase,
    vars: Vec<String>,
    terms: Vec<(BigInt, Exponent)>,
}

impl MonomialIdealOverPIR {
    pub fn new(base: PirBase, vars: Vec<String>, terms: Vec<(BigInt, Exponent)>) -> Result<Self> {
        for (_, e) in &terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    found: e.len(),
                });
            }
        }
        let normed: Vec<(BigInt, Exponent)> = terms
            .into_iter()
            .map(|(c, e)| (base.normalize(&c), e))
            .filter(|(c, _)| !c.is_zero())
            .collect();
        let mut kept: Vec<(BigInt, Exponent)> = Vec::new();
        for (i, (c, e)) in normed.iter().enumerate() {
            let dominated = normed.iter().enumerate().any(|(j, (d, f))| {
                j != i
                    && f.divides(e)
                    && base.contained(c, d)
                    && !(e.divides(f) && base.contained(d, c) && j > i)
            });
            if !dominated && !kept.contains(&(c.clone(), e.clone())) {
                kept.push((c.clone(), e.clone()));
            }
        }
        kept.sort_by(|(_, a), (_, b)| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        Ok(MonomialIdealOverPIR {
            base,
            vars,
            terms: kept,
        })
    }

    pub fn base(&self) -> &PirBase {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &[(BigInt, Exponent)] {
        &self.terms
    }

    fn check(&self, e: &Exponent) -> Result<()> {
        if e.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                found: e.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for MonomialIdealOverPIR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| format_term(&self.vars, c, e))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn format_term(vars: &[String], c: &BigInt, e: &Exponent) -> String {
    let m = format_monomial(vars, e);
    match (c.is_one(), m.is_empty()) {
        (_, true) => c.to_string(),
        (true, false) => m,
        (false, false) => format!("{c}*{m}"),
    }
}

/// Generator of `(J : x^E) ∩ B`.
pub fn mono_coeff_ideal(j: &MonomialIdealOverPIR, e: &Exponent) -> Result<BigInt> {
    j.check(e)?;
    let mut g = match &j.base {
        PirBase::Integers => BigInt::zero(),
        PirBase::Modular(n) => n.clone(),
    };
    for (c, f) in &j.terms {
        if f.divides(e) {
            g = g.gcd(c);
        }
    }
    Ok(j.base.normalize(&g))
}

/// Minimal monomial generators of `J ⊗ F_q`.
pub fn mono_fiber(j: &MonomialIdealOverPIR, q: u64) -> Result<Vec<Exponent>> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let q = BigInt::from(q);
    if let PirBase::Modular(n) = &j.base {
        if !n.is_multiple_of(&q) {
            return Err(Error::precondition(format!(
                "{q} does not divide the modulus {n}"
            )));
        }
    }
    let survivors: Vec<Exponent> = j
        .terms
        .iter()
        .filter(|(c, _)| !c.is_multiple_of(&q))
        .map(|(_, e)| e.clone())
        .collect();
    let mut out: Vec<Exponent> = survivors
        .iter()
        .filter(|e| !survivors.iter().any(|f| f != *e && f.divides(e)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out.dedup();
    Ok(out)
}

/// Extension of scalars to `Z/n` (or to a smaller quotient of `Z/m`).
pub fn mono_base_change(
    j: &MonomialIdealOverPIR,
    n: impl Into<BigInt>,
) -> Result<MonomialIdealOverPIR> {
    let base = PirBase::modular(n)?;
    if let (PirBase::Modular(m), PirBase::Modular(n)) = (&j.base, &base) {
        if !m.is_multiple_of(n) {
            return Err(Error::precondition(format!(
                "Z/{m} does not map onto Z/{n}"
            )));
        }
    }
    MonomialIdealOverPIR::new(base, j.vars.clone(), j.terms.clone())
}

/// Primes whose fiber differs from the generic one; all divide some coefficient.
pub fn mono_special_primes(j: &MonomialIdealOverPIR) -> Result<Vec<u64>> {
    if j.base != PirBase::Integers {
        return Err(Error::Unsupported(
            "special primes are defined over Z".into(),
        ));
    }
    let mut candidates = Vec::new();
    for (c, _) in &j.terms {
        let c = c
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("coefficient {c} is too large to factor")))?;
        for p in prime_factors(c) {
            if !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }
    candidates.sort_unstable();
    let generic = generic_fiber(j);
    let mut out = Vec::new();
    for p in candidates {
        if mono_fiber(j, p)? != generic {
            out.push(p);
        }
    }
    Ok(out)
}

fn generic_fiber(j: &MonomialIdealOverPIR) -> Vec<Exponent> {
    let exps: Vec<Exponent> = j.terms.iter().map(|(_, e)| e.clone()).collect();
    let mut out: Vec<Exponent> = exps
        .iter()
        .filter(|e| !exps.iter().any(|f| f != *e && f.divides(e)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out.dedup();
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficient-ideal generators over a window, rows from `y^0` upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoDiagram {
    pub vars: Vec<String>,
    pub window: Window,
    pub cells: Vec<(Exponent, BigInt)>,
}

pub fn mono_diagram(j: &MonomialIdealOverPIR, window: Window) -> Result<MonoDiagram> {
    if j.vars.len() > 2 {
        return Err(Error::Unsupported(format!(
            "diagrams need at most 2 variables, found {}",
            j.vars.len()
        )));
    }
    let cells = window
        .exponents(j.vars.len())
        .into_iter()
        .map(|e| Ok((mono_coeff_ideal(j, &e)?, e)))
        .map(|r: Result<_>| r.map(|(g, e)| (e, g)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoDiagram {
        vars: j.vars.clone(),
        window,
        cells,
    })
}

impl MonoDiagram {
    /// Rows from `y^0` upward, each cut after its first `(1)`.
    pub fn rows(&self) -> Vec<Vec<String>> {
        let width = if self.vars.is_empty() {
            1
        } else {
            self.window.cols as usize
        };
        self.cells
            .chunks(width)
            .map(|row| {
                let mut out = Vec::new();
                for (_, g) in row {
                    out.push(format!("({g})"));
                    if g.is_one() {
                        break;
                    }
                }
                out
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let cells: Vec<(Exponent, String)> = self
            .cells
            .iter()
            .map(|(e, g)| (e.clone(), format!("({g})")))
            .collect();
        render_staircase(&self.vars, self.window, &cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn ex1() -> MonomialIdealOverPIR {
        MonomialIdealOverPIR::new(
            PirBase::Integers,
            vec!["x".into(), "y".into()],
            vec![
                (9.into(), e(&[1, 0])),
                (2.into(), e(&[0, 1])),
                (1.into(), e(&[2, 0])),
                (1.into(), e(&[0, 2])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn coefficient_gcds() {
        let j = ex1();
        assert_eq!(j.to_string(), "(9*x, 2*y, x^2, y^2)");
        assert_eq!(mono_coeff_ideal(&j, &e(&[1, 1])).unwrap(), BigInt::one());
        assert_eq!(mono_coeff_ideal(&j, &e(&[1, 0])).unwrap(), BigInt::from(9));
        assert_eq!(mono_coeff_ideal(&j, &e(&[0, 1])).unwrap(), BigInt::from(2));
        assert_eq!(mono_coeff_ideal(&j, &e(&[0, 0])).unwrap(), BigInt::zero());
        let j18 = mono_base_change(&j, 18).unwrap();
        assert_eq!(
            mono_coeff_ideal(&j18, &e(&[1, 0])).unwrap(),
            BigInt::from(9)
        );
        assert!(mono_coeff_ideal(&j, &e(&[1])).is_err());
    }

    #[test]
    fn fibers() {
        let j = ex1();
        assert_eq!(mono_fiber(&j, 5).unwrap(), vec![e(&[1, 0]), e(&[0, 1])]);
        assert_eq!(mono_fiber(&j, 2).unwrap(), vec![e(&[1, 0]), e(&[0, 2])]);
        assert_eq!(mono_fiber(&j, 3).unwrap(), vec![e(&[0, 1]), e(&[2, 0])]);
        assert_eq!(mono_fiber(&j, 4), Err(Error::NotPrime(4)));
        assert_eq!(mono_special_primes(&j).unwrap(), vec![2, 3]);
        let j18 = mono_base_change(&j, 18).unwrap();
        assert!(mono_fiber(&j18, 5).is_err());
        assert_eq!(mono_fiber(&j18, 3).unwrap(), mono_fiber(&j, 3).unwrap());
    }

    #[test]
    fn base_change() {
        let j2 = mono_base_change(&ex1(), 2).unwrap();
        assert_eq!(j2.to_string(), "(x, y^2)");
        assert!(mono_base_change(&ex1(), 1).is_err());
        let j7 = mono_base_change(&ex1(), 7).unwrap();
        assert_eq!(j7.to_string(), "(x, y)");
    }

    #[test]
    fn diagrams() {
        let d = mono_diagram(&ex1(), Window::new(3, 3).unwrap()).unwrap();
        let rows = d.rows();
        assert_eq!(rows[0], vec!["(0)", "(9)", "(1)"]);
        assert_eq!(rows[1], vec!["(2)", "(1)"]);
        assert_eq!(rows[2], vec!["(1)"]);
        let text = d.render();
        assert!(text.starts_with("y^2 | (1)\n  y | (2) (1)\n"), "{text}");

        let zero =
            MonomialIdealOverPIR::new(PirBase::Integers, vec!["x".into(), "y".into()], vec![])
                .unwrap();
        let d = mono_diagram(&zero, Window::new(2, 2).unwrap()).unwrap();
        assert!(d.cells.iter().all(|(_, g)| g.is_zero()));

        let three = MonomialIdealOverPIR::new(
            PirBase::Integers,
            vec!["x".into(), "y".into(), "z".into()],
            vec![],
        )
        .unwrap();
        assert!(matches!(
            mono_diagram(&three, Window::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
