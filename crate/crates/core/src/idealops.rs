//! Ideal arithmetic modulo optional base relations `J0`.
//!
//! A quotient ring `k[v]/J0` is never represented directly: `J0`'s
//! generators are adjoined to every computation. Auxiliary variables for the
//! intersection and saturation tricks always live in a fresh dominant block.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::polycore::{Polynomial, Ring};

/// Base relations `J0` of a quotient ring, with a lazily computed basis.
#[derive(Debug)]
pub struct BaseRelations {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    basis: OnceLock<GroebnerBasis>,
}

impl BaseRelations {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Arc<Self>> {
        check_ring(ring, &gens)?;
        Ok(Arc::new(BaseRelations {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceLock::new(),
        }))
    }

    pub fn none(ring: &Arc<Ring>) -> Arc<Self> {
        Self::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn basis(&self) -> Result<&GroebnerBasis> {
        cached_basis(&self.basis, &self.ring, &self.gens)
    }

    /// True if `f` vanishes in the quotient ring.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(f.is_zero());
        }
        self.basis()?.contains(f)
    }

    fn same_as(&self, other: &BaseRelations) -> bool {
        std::ptr::eq(self, other) || (*self.ring == *other.ring && self.gens == other.gens)
    }
}

fn check_ring(ring: &Arc<Ring>, polys: &[Polynomial]) -> Result<()> {
    if polys
        .iter()
        .all(|f| Arc::ptr_eq(f.ring(), ring) || **f.ring() == **ring)
    {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn cached_basis<'a>(
    cell: &'a OnceLock<GroebnerBasis>,
    ring: &Arc<Ring>,
    gens: &[Polynomial],
) -> Result<&'a GroebnerBasis> {
    if let Some(gb) = cell.get() {
        return Ok(gb);
    }
    let gb = groebner::groebner_basis(ring, gens)?;
    Ok(cell.get_or_init(|| gb))
}

/// An ideal of `k[v]/J0`, given by generators in `k[v]`.
#[derive(Clone, Debug)]
pub struct IdealHandle {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    base: Arc<BaseRelations>,
    basis: OnceLock<GroebnerBasis>,
}

/// Result of `(K : L)`; `by_zero` records the zero-ideal convention.
#[derive(Clone, Debug)]
pub struct Colon {
    pub ideal: IdealHandle,
    pub by_zero: bool,
}

impl IdealHandle {
    pub fn new(base: &Arc<BaseRelations>, gens: Vec<Polynomial>) -> Result<Self> {
        check_ring(base.ring(), &gens)?;
        Ok(IdealHandle {
            ring: base.ring().clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            base: base.clone(),
            basis: OnceLock::new(),
        })
    }

    pub fn unit(base: &Arc<BaseRelations>) -> Self {
        Self::new(base, vec![Polynomial::one(base.ring())]).expect("constant lives in the ring")
    }

    pub fn zero(base: &Arc<BaseRelations>) -> Self {
        Self::new(base, Vec::new()).expect("empty generator list")
    }

    /// New ideal over the same ring and base relations.
    pub fn with_generators(&self, gens: Vec<Polynomial>) -> Result<Self> {
        Self::new(&self.base, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<BaseRelations> {
        &self.base
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis of the generators together with `J0`.
    pub fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.basis.get() {
            return Ok(gb);
        }
        let mut all = self.gens.clone();
        all.extend(self.base.generators().iter().cloned());
        cached_basis(&self.basis, &self.ring, &all)
    }

    /// Canonical generators modulo `J0`: reduced-basis elements that do not
    /// already vanish in the quotient ring. Empty for the zero ideal.
    pub fn reduced_generators(&self) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for g in self.basis()?.polys() {
            if !self.base.contains(g)? {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.reduced_generators()?.is_empty())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.is_unit())
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        self.basis()?.contains(f)
    }

    fn check_compatible(&self, other: &IdealHandle) -> Result<()> {
        if (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
            && self.base.same_as(&other.base)
        {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, g: &Polynomial) -> Result<()> {
        check_ring(&self.ring, std::slice::from_ref(g))
    }

    /// `self ⊇ other` in the quotient ring.
    pub fn contains_mod(&self, other: &IdealHandle) -> Result<bool> {
        self.check_compatible(other)?;
        let gb = self.basis()?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals_mod(&self, other: &IdealHandle) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis()?.polys() == other.basis()?.polys())
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_compatible(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.with_generators(gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_compatible(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        self.with_generators(gens)
    }

    /// Generators of `self` together with `J0`, as a reduced basis.
    fn full_generators(&self) -> Result<Vec<Polynomial>> {
        Ok(self.basis()?.polys().to_vec())
    }

    /// `K ∩ L` by eliminating `t` from `t*K + (1 - t)*L`.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_compatible(other)?;
        let gens = intersect_generators(
            &self.ring,
            &self.full_generators()?,
            &other.full_generators()?,
        )?;
        self.with_generators(gens)
    }

    /// `(K : g)` computed as `(K ∩ (g)) / g`.
    pub fn colon_poly(&self, g: &Polynomial) -> Result<IdealHandle> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Err(Error::precondition("colon by the zero polynomial"));
        }
        let inter = intersect_generators(
            &self.ring,
            &self.full_generators()?,
            std::slice::from_ref(g),
        )?;
        let quotients = inter
            .iter()
            .map(|f| f.divide_exact(g))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::DivisionFailure(m) => {
                    Error::DivisionFailure(format!("internal invariant violated: {m}"))
                }
                other => other,
            })?;
        self.with_generators(quotients)
    }

    /// `(K : L)` as the intersection of `(K : g)` over the generators of `L`.
    /// For `L = (0)` the answer is `(1)` and the result is flagged.
    pub fn colon_ideal(&self, other: &IdealHandle) -> Result<Colon> {
        self.check_compatible(other)?;
        let gens = other.reduced_generators()?;
        if gens.is_empty() {
            return Ok(Colon {
                ideal: IdealHandle::unit(&self.base),
                by_zero: true,
            });
        }
        let mut acc: Option<IdealHandle> = None;
        for g in &gens {
            let q = self.colon_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.intersect(&q)?,
            });
        }
        Ok(Colon {
            ideal: acc.expect("at least one generator"),
            by_zero: false,
        })
    }

    /// `(K : g^∞)` by eliminating `w` from `K + (1 - w*g)`.
    pub fn saturate(&self, g: &Polynomial) -> Result<IdealHandle> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Err(Error::precondition("saturation by the zero polynomial"));
        }
        let (ext, w) = extend(&self.ring);
        let mut gens = lift_all(&ext, &self.full_generators()?)?;
        gens.push(rabinowitsch(&ext, w, g)?);
        let gb = groebner::groebner_basis(&ext, &gens)?;
        let kept = drop_aux(&self.ring, w, gb.polys())?;
        self.with_generators(kept)
    }

    /// Some power of `s` lies in `K` modulo `J0`; tested as `1 ∈ K + (1 - w*s)`.
    pub fn radical_member(&self, s: &Polynomial) -> Result<bool> {
        self.check_poly(s)?;
        if s.is_zero() {
            return Ok(true);
        }
        let (ext, w) = extend(&self.ring);
        let mut gens = lift_all(&ext, &self.full_generators()?)?;
        gens.push(rabinowitsch(&ext, w, s)?);
        Ok(groebner::groebner_basis(&ext, &gens)?.is_unit())
    }

    /// `(a, c)` style rendering of the canonical generators.
    pub fn display(&self) -> Result<String> {
        Ok(format_generators(&self.reduced_generators()?))
    }
}

/// `(g1, g2, ...)`, with `(0)` for the empty list.
pub fn format_generators(gens: &[Polynomial]) -> String {
    if gens.is_empty() {
        return "(0)".into();
    }
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.display() {
            Ok(s) => write!(f, "{s}"),
            Err(_) => write!(f, "{}", format_generators(&self.gens)),
        }
    }
}

fn extend(ring: &Arc<Ring>) -> (Arc<Ring>, usize) {
    let ext = ring.with_dominant_var("_t");
    (ext, ring.nvars())
}

fn lift_all(ext: &Arc<Ring>, polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let map: Vec<Option<usize>> = (0..ext.nvars() - 1).map(Some).collect();
    polys.iter().map(|f| f.map_vars(ext, &map)).collect()
}

fn rabinowitsch(ext: &Arc<Ring>, w: usize, g: &Polynomial) -> Result<Polynomial> {
    let g = lift_all(ext, std::slice::from_ref(g))?.remove(0);
    Polynomial::one(ext).try_sub(&Polynomial::var(ext, w).try_mul(&g)?)
}

fn drop_aux(ring: &Arc<Ring>, aux: usize, polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut map: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    map.insert(aux, None);
    polys
        .iter()
        .filter(|g| !g.involves(aux))
        .map(|g| g.map_vars(ring, &map))
        .collect()
}

/// Generators of `(a) ∩ (b)` in `ring`, no base relations involved.
fn intersect_generators(
    ring: &Arc<Ring>,
    a: &[Polynomial],
    b: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let (ext, t) = extend(ring);
    let tvar = Polynomial::var(&ext, t);
    let one_minus_t = Polynomial::one(&ext).try_sub(&tvar)?;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in lift_all(&ext, a)? {
        gens.push(tvar.try_mul(&f)?);
    }
    for g in lift_all(&ext, b)? {
        gens.push(one_minus_t.try_mul(&g)?);
    }
    let gb = groebner::groebner_basis(&ext, &gens)?;
    drop_aux(ring, t, gb.polys())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{Field, PrimitiveOrder};

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::with_order(Field::Rationals, vars, PrimitiveOrder::Lex)
    }

    fn ideal(base: &Arc<BaseRelations>, gens: &[&str]) -> IdealHandle {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(base.ring(), s).unwrap())
            .collect();
        IdealHandle::new(base, polys).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn redex_base() -> Arc<BaseRelations> {
        let r = ring(&["a", "b", "c", "d"]);
        let gens = ["a*c", "a*d", "b*c", "b*d"]
            .iter()
            .map(|s| p(&r, s))
            .collect();
        BaseRelations::new(&r, gens).unwrap()
    }

    #[test]
    fn intersections() {
        let base = BaseRelations::none(&ring(&["a", "b", "c", "d"]));
        let k = ideal(&base, &["a"]);
        let l = ideal(&base, &["b"]);
        assert_eq!(k.intersect(&l).unwrap().display().unwrap(), "(a*b)");
        let k = ideal(&base, &["a", "b"]);
        let l = ideal(&base, &["c", "d"]);
        let inter = k.intersect(&l).unwrap();
        assert!(inter
            .equals_mod(&ideal(&base, &["a*c", "a*d", "b*c", "b*d"]))
            .unwrap());
        assert!(k.intersect(&k).unwrap().equals_mod(&k).unwrap());
    }

    #[test]
    fn colon_by_polynomial() {
        let r = ring(&["a", "b"]);
        let base = BaseRelations::none(&r);
        assert_eq!(
            ideal(&base, &["a^2"])
                .colon_poly(&p(&r, "a"))
                .unwrap()
                .display()
                .unwrap(),
            "(a)"
        );
        assert_eq!(
            ideal(&base, &["a*b"])
                .colon_poly(&p(&r, "a"))
                .unwrap()
                .display()
                .unwrap(),
            "(b)"
        );
        assert!(ideal(&base, &["a"])
            .colon_poly(&Polynomial::zero(&r))
            .is_err());

        let base = redex_base();
        let r = base.ring().clone();
        let q = ideal(&base, &["a^2"]).colon_poly(&p(&r, "a")).unwrap();
        assert_eq!(q.display().unwrap(), "(a, c, d)");
    }

    #[test]
    fn colon_by_ideal() {
        let r = ring(&["a"]);
        let base = BaseRelations::none(&r);
        let k = ideal(&base, &["a^3 - a"]);
        let c = k.colon_ideal(&IdealHandle::unit(&base)).unwrap();
        assert!(c.ideal.equals_mod(&k).unwrap());
        let c = ideal(&base, &["a^2"])
            .colon_ideal(&ideal(&base, &["a"]))
            .unwrap();
        assert_eq!(c.ideal.display().unwrap(), "(a)");
        let c = k.colon_ideal(&IdealHandle::zero(&base)).unwrap();
        assert!(c.by_zero);
        assert!(c.ideal.is_unit().unwrap());

        let base = redex_base();
        let c = ideal(&base, &["c^2"])
            .colon_ideal(&ideal(&base, &["c"]))
            .unwrap();
        assert_eq!(c.ideal.display().unwrap(), "(a, b, c)");
    }

    #[test]
    fn saturation() {
        let r = ring(&["a", "b"]);
        let base = BaseRelations::none(&r);
        assert!(ideal(&base, &["a"])
            .saturate(&p(&r, "a"))
            .unwrap()
            .is_unit()
            .unwrap());
        assert_eq!(
            ideal(&base, &["b"])
                .saturate(&p(&r, "a"))
                .unwrap()
                .display()
                .unwrap(),
            "(b)"
        );
        let sat = ideal(&base, &["a^3*b", "a*b^2"])
            .saturate(&p(&r, "a"))
            .unwrap();
        assert_eq!(sat.display().unwrap(), "(b)");
    }

    #[test]
    fn radical_membership() {
        let r = ring(&["a"]);
        let base = BaseRelations::none(&r);
        assert!(ideal(&base, &["a^2"]).radical_member(&p(&r, "a")).unwrap());
        assert!(!ideal(&base, &["a"])
            .radical_member(&Polynomial::one(&r))
            .unwrap());

        let r4 = ring(&["a", "b", "c", "d"]);
        let base = BaseRelations::none(&r4);
        let inter = ideal(&base, &["a", "b"])
            .intersect(&ideal(&base, &["c", "d"]))
            .unwrap();
        assert!(!inter.radical_member(&p(&r4, "a")).unwrap());
        assert!(inter.radical_member(&p(&r4, "a*c + b*d")).unwrap());
    }

    #[test]
    fn equality_and_containment() {
        let r = ring(&["a", "b"]);
        let none = BaseRelations::none(&r);
        assert!(ideal(&none, &["a", "b"])
            .equals_mod(&ideal(&none, &["b", "a"]))
            .unwrap());
        let ab = BaseRelations::new(&r, vec![p(&r, "a*b")]).unwrap();
        assert!(ideal(&ab, &["a*b", "b"])
            .equals_mod(&ideal(&ab, &["b"]))
            .unwrap());
        assert!(ideal(&none, &["a^2"])
            .contains_mod(&IdealHandle::zero(&none))
            .unwrap());
        assert!(!ideal(&none, &["a^2"])
            .contains_mod(&ideal(&none, &["a"]))
            .unwrap());
        assert_eq!(ideal(&ab, &["a*b"]).display().unwrap(), "(0)");
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let r = ring(&["a", "b"]);
        let none = BaseRelations::none(&r);
        let ab = BaseRelations::new(&r, vec![p(&r, "a*b")]).unwrap();
        assert_eq!(
            ideal(&none, &["a"])
                .intersect(&ideal(&ab, &["b"]))
                .unwrap_err(),
            Error::RingMismatch
        );
    }
}
