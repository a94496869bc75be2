//! Division, Buchberger's algorithm, reduced bases and elimination over a field.

mod division;

use std::collections::HashSet;
use std::sync::Arc;

pub use division::{is_reduced_against, normal_form, s_polynomial};

use crate::error::{Error, Result};
use crate::polycore::{Exponent, MonomialOrder, OrderBlock, Polynomial, PrimitiveOrder, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// The basis describes the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|g| g.is_unit())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn leading_exponents(&self) -> Vec<&Exponent> {
        self.polys.iter().filter_map(|g| g.lead_exp()).collect()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
}

fn check_same_ring(ring: &Arc<Ring>, polys: &[Polynomial]) -> Result<()> {
    if polys
        .iter()
        .all(|f| Arc::ptr_eq(f.ring(), ring) || **f.ring() == **ring)
    {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first, ties by index) and both the coprime and chain criteria.
///
/// The result is a Gröbner basis but not necessarily reduced; see
/// [`reduced_basis`].
pub fn buchberger(ring: &Arc<Ring>, generators: &[Polynomial]) -> Result<GroebnerBasis> {
    check_same_ring(ring, generators)?;
    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        if g.is_unit() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                polys: vec![Polynomial::one(ring)],
                reduced: true,
            });
        }
        basis.push(g.monic());
    }

    let mut pending: Vec<Pair> = Vec::new();
    let mut open: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&basis, &mut pending, &mut open, i, j);
        }
    }

    while !pending.is_empty() {
        let next = (0..pending.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pending[a].lcm, &pending[b].lcm)
                    .then((pending[a].i, pending[a].j).cmp(&(pending[b].i, pending[b].j)))
            })
            .expect("nonempty");
        let pair = pending.swap_remove(next);
        open.remove(&(pair.i, pair.j));

        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        let (ei, ej) = (fi.lead_exp().unwrap(), fj.lead_exp().unwrap());
        if ei.is_coprime(ej) {
            continue;
        }
        if chain_criterion(&basis, &open, &pair) {
            continue;
        }
        let s = s_polynomial(fi, fj)?;
        let r = normal_form(&s, &basis)?;
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                polys: vec![Polynomial::one(ring)],
                reduced: true,
            });
        }
        basis.push(r.monic());
        let k = basis.len() - 1;
        for i in 0..k {
            push_pair(&basis, &mut pending, &mut open, i, k);
        }
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        polys: basis,
        reduced: false,
    })
}

fn push_pair(
    basis: &[Polynomial],
    pending: &mut Vec<Pair>,
    open: &mut HashSet<(usize, usize)>,
    i: usize,
    j: usize,
) {
    let lcm = basis[i]
        .lead_exp()
        .unwrap()
        .lcm(basis[j].lead_exp().unwrap());
    pending.push(Pair { i, j, lcm });
    open.insert((i, j));
}

/// The pair `(i, j)` is redundant if some `k` has a leading monomial dividing
/// the lcm and neither `(i, k)` nor `(j, k)` is still waiting.
fn chain_criterion(basis: &[Polynomial], open: &HashSet<(usize, usize)>, pair: &Pair) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != pair.i
            && k != pair.j
            && basis[k].lead_exp().unwrap().divides(&pair.lcm)
            && !open.contains(&key(pair.i, k))
            && !open.contains(&key(pair.j, k))
    })
}

/// Canonical reduced basis: minimal, monic, tail-reduced, sorted by leading
/// monomial in decreasing order. Idempotent.
pub fn reduced_basis(basis: &GroebnerBasis) -> Result<GroebnerBasis> {
    let ring = &basis.ring;
    let order = ring.order();
    let mut polys: Vec<Polynomial> = basis
        .polys
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if polys.iter().any(|g| g.is_unit()) {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            polys: vec![Polynomial::one(ring)],
            reduced: true,
        });
    }
    polys.sort_by(|a, b| order.cmp(a.lead_exp().unwrap(), b.lead_exp().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in polys {
        let lead = g.lead_exp().unwrap();
        if minimal.iter().all(|h| !h.lead_exp().unwrap().divides(lead)) {
            minimal.push(g);
        }
    }
    for idx in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, g)| g.clone())
            .collect();
        let reduced = normal_form(&minimal[idx], &others)?;
        debug_assert_eq!(reduced.lead_exp(), minimal[idx].lead_exp());
        minimal[idx] = reduced.monic();
    }
    minimal.sort_by(|a, b| order.cmp(b.lead_exp().unwrap(), a.lead_exp().unwrap()));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        polys: minimal,
        reduced: true,
    })
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn groebner_basis(ring: &Arc<Ring>, generators: &[Polynomial]) -> Result<GroebnerBasis> {
    reduced_basis(&buchberger(ring, generators)?)
}

/// Generators (a reduced basis) of `I ∩ k[remaining variables]`, expressed in
/// the original ring. An elimination order is synthesized internally unless
/// the ring's own order already eliminates `drop`.
pub fn eliminate(
    ring: &Arc<Ring>,
    generators: &[Polynomial],
    drop: &[usize],
) -> Result<Vec<Polynomial>> {
    check_same_ring(ring, generators)?;
    if let Some(&bad) = drop.iter().find(|&&v| v >= ring.nvars()) {
        return Err(Error::InvalidOrder(format!(
            "variable index {bad} out of range"
        )));
    }
    if ring.order().eliminates(drop) {
        let gb = groebner_basis(ring, generators)?;
        return Ok(gb
            .into_polys()
            .into_iter()
            .filter(|g| drop.iter().all(|&v| !g.involves(v)))
            .collect());
    }
    let mut blocks = vec![OrderBlock::new(drop.to_vec(), PrimitiveOrder::GrevLex)];
    blocks.extend(ring.order().restrict(drop));
    let elim_ring = ring.reordered(MonomialOrder::new(ring.nvars(), blocks)?)?;
    let identity: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    let moved = generators
        .iter()
        .map(|g| g.map_vars(&elim_ring, &identity))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner_basis(&elim_ring, &moved)?;
    let kept = gb
        .into_polys()
        .into_iter()
        .filter(|g| drop.iter().all(|&v| !g.involves(v)))
        .map(|g| g.map_vars(ring, &identity))
        .collect::<Result<Vec<_>>>()?;
    Ok(groebner_basis(ring, &kept)?.into_polys())
}

/// Ideal membership via the normal form against a Gröbner basis.
pub fn member(f: &Polynomial, basis: &GroebnerBasis) -> Result<bool> {
    basis.contains(f)
}

/// Leading monomials of the basis pruned to a minimal generating set of the
/// monomial ideal they generate, sorted decreasingly.
pub fn minimal_monomials(order: &MonomialOrder, exps: &[Exponent]) -> Vec<Exponent> {
    let mut sorted: Vec<Exponent> = exps.to_vec();
    sorted.sort_by(|a, b| order.cmp(a, b));
    sorted.dedup();
    let mut minimal: Vec<Exponent> = Vec::new();
    for e in sorted {
        if minimal.iter().all(|m| !m.divides(&e)) {
            minimal.push(e);
        }
    }
    minimal.sort_by(|a, b| order.cmp(b, a));
    minimal
}

/// Compares two leading-monomial lists as monomial ideals.
pub fn monomial_ideal_contains(larger: &[Exponent], smaller: &[Exponent]) -> bool {
    smaller.iter().all(|e| larger.iter().any(|m| m.divides(e)))
}
