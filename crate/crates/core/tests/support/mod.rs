#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use flatgb::families::{BlockSpec, FamilyRing};
use flatgb::polycore::{Coefficient, Term};
use flatgb::{
    Exponent, FamilyIdeal, Field, IdealHandle, Polynomial, PrimitiveOrder, RationalPoint,
};
use rand::rngs::StdRng;
use rand::Rng;

pub const P: u64 = 32003;

pub fn family(params: &[&str], mains: &[&str], base: &[&str]) -> Arc<FamilyRing> {
    FamilyRing::lex(Field::Rationals, params, mains, base).unwrap()
}

pub fn ideal(fam: &Arc<FamilyRing>, gens: &[&str]) -> FamilyIdeal {
    FamilyIdeal::parse(fam, gens).unwrap()
}

pub fn exp(v: &[u32]) -> Exponent {
    Exponent::new(v.to_vec())
}

/// The regression ideals, by name.
pub fn regression_ideals() -> Vec<(&'static str, FamilyIdeal)> {
    let xy = family(&["a"], &["x", "y"], &[]);
    let abxy = family(&["a", "b"], &["x", "y"], &[]);
    vec![
        ("ex1", ideal(&xy, &["a*x - y"])),
        ("ex2", ideal(&abxy, &["a*x^2 + y", "b*y^2 + y + 1"])),
        ("ex3", ideal(&family(&["a"], &["x"], &[]), &["a*x - 1"])),
        (
            "fractex",
            ideal(&family(&["a", "b"], &["x"], &["a*b"]), &["a*x + 1"]),
        ),
        (
            "fuzzex",
            ideal(&family(&["a", "b"], &["x", "y"], &["a^2"]), &["a*x - y"]),
        ),
        (
            "gtzex",
            ideal(
                &family(&["a", "b"], &["x"], &["a*b"]),
                &["a*(a - 1)*x", "x^2"],
            ),
        ),
        (
            "redex",
            ideal(
                &family(
                    &["a", "b", "c", "d"],
                    &["x", "y"],
                    &["a*c", "a*d", "b*c", "b*d"],
                ),
                &["a*x + b", "c*y + d"],
            ),
        ),
        (
            "fitex",
            ideal(&xy, &["a*x + y", "x^3", "x^2*y", "x*y^2", "y^3"]),
        ),
        (
            "fibers",
            ideal(&family(&["a", "b"], &["x"], &[]), &["a*x - b"]),
        ),
        ("iso", ideal(&abxy, &["x - a", "y - b"])),
    ]
}

/// A random point satisfying the base relations, coordinates in `-3..=3`.
pub fn random_point(fam: &FamilyRing, rng: &mut StdRng) -> RationalPoint {
    let field = fam.field();
    loop {
        let values: HashMap<String, Coefficient> = fam
            .params()
            .iter()
            .map(|p| {
                let v = if rng.gen_bool(0.5) {
                    0
                } else {
                    rng.gen_range(-3..=3)
                };
                (p.clone(), field.from_i64(v))
            })
            .collect();
        if let Ok(pt) = RationalPoint::new(fam, values) {
            return pt;
        }
    }
}

fn random_poly(
    ring: &Arc<flatgb::Ring>,
    rng: &mut StdRng,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let field = ring.field();
    let n = ring.nvars();
    let nterms = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(1..P as i64);
        terms.push((field.from_i64(c), Exponent::new(e)));
    }
    Polynomial::from_terms(ring, terms).unwrap()
}

/// Random generators in `k[x1..xn]` over `F_32003`.
pub fn random_ideal(
    ring: &Arc<flatgb::Ring>,
    rng: &mut StdRng,
    max_gens: usize,
    max_deg: u32,
    max_terms: usize,
) -> Vec<Polynomial> {
    let count = rng.gen_range(1..=max_gens);
    (0..count)
        .map(|_| random_poly(ring, rng, max_deg, max_terms))
        .filter(|g| !g.is_zero())
        .collect()
}

/// A random family over `F_32003` with parameter `a` and main variables `x, y`.
pub fn random_family_ideal(rng: &mut StdRng, max_gens: usize, max_deg: u32) -> FamilyIdeal {
    let field = Field::prime(P).unwrap();
    let kind = if rng.gen_bool(0.5) {
        PrimitiveOrder::Lex
    } else {
        PrimitiveOrder::GrevLex
    };
    let fam = FamilyRing::new(
        field,
        vec!["a".into()],
        vec!["x".into(), "y".into()],
        BlockSpec::new(kind, &["x", "y"]),
        BlockSpec::new(PrimitiveOrder::Lex, &["a"]),
        &[],
    )
    .unwrap();
    let gens = random_ideal(fam.total_ring(), rng, max_gens, max_deg, 3);
    FamilyIdeal::new(&fam, gens).unwrap()
}

fn residue(c: &Coefficient) -> u64 {
    match c {
        Coefficient::Modular(v) => *v,
        Coefficient::Rational(_) => panic!("oracle works over a prime field"),
    }
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn monomials_up_to(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur.push(d);
            rec(n, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

/// Coefficient ideals read off a degree-bounded Macaulay matrix.
///
/// Rows are `m * g` for the generators of `I + J0` and monomials `m` with
/// `deg(m g) <= bound`; after row reduction with columns in decreasing
/// order, the rows whose pivot has `x`-part `E` span, through their `x^E`
/// coefficients, the degree-bounded part of `in(I)_E`.
pub struct MacaulayOracle {
    fam: Arc<FamilyRing>,
    rows: Vec<Vec<(Exponent, u64)>>,
}

impl MacaulayOracle {
    pub fn new(ideal: &FamilyIdeal, bound: u32) -> Self {
        let fam = ideal.family().clone();
        let ring = fam.total_ring().clone();
        let p = fam.field().characteristic();
        let order = ring.order().clone();
        let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
        for g in fam.total_base().generators() {
            gens.push(g.clone());
        }
        let mut cols: Vec<Exponent> = monomials_up_to(ring.nvars(), bound)
            .into_iter()
            .map(Exponent::new)
            .collect();
        cols.sort_by(|a, b| order.cmp(b, a));
        let index: HashMap<Exponent, usize> = cols
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut dense: Vec<Vec<u64>> = Vec::new();
        for g in &gens {
            let d = g.total_degree() as u32;
            if d > bound {
                continue;
            }
            for m in monomials_up_to(ring.nvars(), bound - d) {
                let m = Exponent::new(m);
                let mut row = vec![0u64; cols.len()];
                for Term { coeff, exp } in g.terms() {
                    let e = exp.checked_mul(&m).unwrap();
                    row[index[&e]] = residue(coeff);
                }
                dense.push(row);
            }
        }
        // reduced row echelon form
        let mut pivot_row = 0;
        for col in 0..cols.len() {
            let Some(r) = (pivot_row..dense.len()).find(|&r| dense[r][col] != 0) else {
                continue;
            };
            dense.swap(pivot_row, r);
            let s = inv(dense[pivot_row][col], p);
            for v in dense[pivot_row].iter_mut() {
                *v = *v * s % p;
            }
            let pivot = dense[pivot_row].clone();
            for (i, row) in dense.iter_mut().enumerate() {
                if i != pivot_row && row[col] != 0 {
                    let f = row[col];
                    for (v, pv) in row.iter_mut().zip(&pivot) {
                        *v = (*v + p - f * pv % p) % p;
                    }
                }
            }
            pivot_row += 1;
        }
        dense.truncate(pivot_row);
        let rows = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| *v != 0)
                    .map(|(i, v)| (cols[i].clone(), v))
                    .collect()
            })
            .collect();
        MacaulayOracle { fam, rows }
    }

    /// Generators of the degree-bounded part of `in(I)_E`, as polynomials in `k[a]`.
    pub fn coefficients(&self, e: &Exponent) -> Vec<Polynomial> {
        let fam = &self.fam;
        let field = fam.field();
        let mut out = Vec::new();
        for row in &self.rows {
            let lead = &row[0].0;
            if fam.main_part(lead) != *e {
                continue;
            }
            let terms: Vec<(Coefficient, Exponent)> = row
                .iter()
                .filter(|(m, _)| fam.main_part(m) == *e)
                .map(|(m, v)| (field.from_i64(*v as i64), fam.param_part(m)))
                .collect();
            out.push(Polynomial::from_terms(fam.param_ring(), terms).unwrap());
        }
        out
    }

    pub fn coefficient_ideal(&self, e: &Exponent) -> IdealHandle {
        self.fam.param_ideal(self.coefficients(e)).unwrap()
    }

    /// Degree-bounded part of `I ∩ k[a]`.
    pub fn contraction(&self) -> IdealHandle {
        let zero = Exponent::zero(self.fam.mains().len());
        self.coefficient_ideal(&zero)
    }
}
