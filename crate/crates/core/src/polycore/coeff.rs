//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic used when a prime field is requested without an explicit prime.
pub const DEFAULT_PRIME: u64 = 32003;

/// Largest accepted characteristic; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// An element of a [`Field`]. Rationals are kept in lowest terms with a
/// positive denominator; residues satisfy `0 <= value < p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Modular(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::Unsupported(format!(
                "prime characteristic {p} exceeds {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coefficient {
        match self {
            Field::Rationals => Coefficient::Rational(BigRational::zero()),
            Field::Prime(_) => Coefficient::Modular(0),
        }
    }

    pub fn one(&self) -> Coefficient {
        match self {
            Field::Rationals => Coefficient::Rational(BigRational::one()),
            Field::Prime(_) => Coefficient::Modular(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coefficient {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coefficient {
        match self {
            Field::Rationals => Coefficient::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Coefficient::Modular(reduce_bigint(n, *p)),
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coefficient> {
        match self {
            Field::Rationals => Ok(Coefficient::Rational(q.clone())),
            Field::Prime(p) => {
                let num = reduce_bigint(q.numer(), *p);
                let den = reduce_bigint(q.denom(), *p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Coefficient::Modular(mul_mod(num, inv_mod(den, *p), *p)))
            }
        }
    }

    pub fn is_zero(&self, c: &Coefficient) -> bool {
        match c {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coefficient) -> bool {
        match c {
            Coefficient::Rational(q) => q.is_one(),
            Coefficient::Modular(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Rationals, Coefficient::Rational(x), Coefficient::Rational(y)) => {
                Coefficient::Rational(x + y)
            }
            (Field::Prime(p), Coefficient::Modular(x), Coefficient::Modular(y)) => {
                Coefficient::Modular((x + y) % p)
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coefficient) -> Coefficient {
        match (self, a) {
            (Field::Rationals, Coefficient::Rational(x)) => Coefficient::Rational(-x),
            (Field::Prime(p), Coefficient::Modular(x)) => {
                Coefficient::Modular(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Rationals, Coefficient::Rational(x), Coefficient::Rational(y)) => {
                Coefficient::Rational(x * y)
            }
            (Field::Prime(p), Coefficient::Modular(x), Coefficient::Modular(y)) => {
                Coefficient::Modular(mul_mod(*x, *y, *p))
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn inv(&self, a: &Coefficient) -> Result<Coefficient> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rationals, Coefficient::Rational(x)) => Coefficient::Rational(x.recip()),
            (Field::Prime(p), Coefficient::Modular(x)) => Coefficient::Modular(inv_mod(*x, *p)),
            _ => panic!("coefficient does not belong to {self:?}"),
        })
    }

    pub fn div(&self, a: &Coefficient, b: &Coefficient) -> Result<Coefficient> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// True if `c` is a valid element of this field.
    pub fn contains(&self, c: &Coefficient) -> bool {
        match (self, c) {
            (Field::Rationals, Coefficient::Rational(_)) => true,
            (Field::Prime(p), Coefficient::Modular(v)) => v < p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp({p})"),
        }
    }
}

impl Coefficient {
    /// Sign used when printing; residues are always printed as nonnegative.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_negative(),
            Coefficient::Modular(_) => false,
        }
    }

    pub(crate) fn abs_is_one(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.abs().is_one(),
            Coefficient::Modular(v) => *v == 1,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coefficient::Modular(v) => write!(f, "{v}"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}
