//! Families of ideals over a parameter ring `A = k[a]/J0`.
//!
//! An ideal `I ⊂ A[x]` is handled in `k[a, x]` together with `J0`, under a
//! product order in which the `x` block dominates and the `a` block breaks
//! ties. For every element `g` of the reduced basis let `E_g` be the
//! `x`-exponent of its leading term and `c_g(a)` the full coefficient of
//! `x^{E_g}` in `g`. The initial ideal of `I` over `A` is generated by the
//! terms `c_g x^{E_g}`, and the coefficient ideal at `E` is
//! `in(I)_E = (c_g : E_g <= E) + J0`.
//!
//! # Good points
//!
//! [`good_point`] asks whether every `in(I)_E` becomes `(0)` or `(1)` in
//! `B = A_p/(I ∩ A)_p`. Only the finitely many leading exponents `D` of the
//! basis are inspected: each `in(I)_E` is the sum of the `in(I)_D` with
//! `D <= E`, and a sum of ideals that are each locally `(0)` or `(1)` is again
//! locally `(0)` or `(1)`. A generator `g` is locally zero in `B` exactly
//! when `((I ∩ A) : g) ⊄ p`, which is how the zero case is decided without
//! computing in the local ring. The prime is trusted, not verified, so every
//! verdict is conditional on `p` being prime.

mod criteria;
mod initial;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub use criteria::{
    finite_locus, flat_locus, good_point, iso_locus, localize_contract, quotient_extension_check,
    specialization_check, FlatComponent, FlatLocus, GoodPointVerdict, LocusKind, LocusReport,
    PointVerdict, QuotientCheck, QuotientCheckEntry, SpecializationReport, Witness,
};
pub use initial::{
    base_contraction, coefficient_table, minimal_exponents, relative_initial, render_staircase,
    CoefficientEntry, CoefficientTable, InitialEntry, RelativeInitial, Window,
};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::idealops::{BaseRelations, IdealHandle};
use crate::polycore::{
    format_monomial, Coefficient, Exponent, Field, MonomialOrder, OrderBlock, Polynomial,
    PrimitiveOrder, Ring,
};

/// Primitive order on one block, with the block's variables in rank order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub kind: PrimitiveOrder,
    pub ranking: Vec<String>,
}

impl BlockSpec {
    pub fn new(kind: PrimitiveOrder, ranking: &[&str]) -> Self {
        BlockSpec {
            kind,
            ranking: ranking.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn lex(ranking: &[String]) -> Self {
        BlockSpec {
            kind: PrimitiveOrder::Lex,
            ranking: ranking.to_vec(),
        }
    }
}

/// `A = k[a]/J0` and the ambient ring `k[a, x]` with its product order.
///
/// Total-ring variable indices: parameters first (`0..m`), then the main
/// variables (`m..m+n`).
#[derive(Debug)]
pub struct FamilyRing {
    field: Field,
    params: Vec<String>,
    mains: Vec<String>,
    main_order: BlockSpec,
    param_order: BlockSpec,
    total: Arc<Ring>,
    param_ring: Arc<Ring>,
    main_ring: Arc<Ring>,
    base: Arc<BaseRelations>,
    total_base: Arc<BaseRelations>,
}

fn block_indices(spec: &BlockSpec, names: &[String], offset: usize) -> Result<Vec<usize>> {
    let mut idx = Vec::with_capacity(names.len());
    for v in &spec.ranking {
        let i = names
            .iter()
            .position(|n| n == v)
            .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
        idx.push(i + offset);
    }
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != names.len() || idx.len() != names.len() {
        return Err(Error::InvalidOrder(format!(
            "order must rank each of {} exactly once",
            names.join(", ")
        )));
    }
    Ok(idx)
}

impl FamilyRing {
    /// Builds `k[a]/J0` with the given block orders; `base` holds `J0`'s
    /// generators as text over the parameters.
    pub fn new(
        field: Field,
        params: Vec<String>,
        mains: Vec<String>,
        main_order: BlockSpec,
        param_order: BlockSpec,
        base: &[Polynomial],
    ) -> Result<Arc<FamilyRing>> {
        let m = params.len();
        let n = mains.len();
        for name in &mains {
            if params.contains(name) {
                return Err(Error::InvalidOrder(format!(
                    "`{name}` is both a parameter and a variable"
                )));
            }
        }
        let main_idx = block_indices(&main_order, &mains, m)?;
        let param_idx = block_indices(&param_order, &params, 0)?;

        let mut blocks = Vec::new();
        if n > 0 {
            blocks.push(OrderBlock::new(main_idx.clone(), main_order.kind));
        }
        if m > 0 {
            blocks.push(OrderBlock::new(param_idx.clone(), param_order.kind));
        }
        let vars: Vec<String> = params.iter().chain(&mains).cloned().collect();
        let total = Ring::new(field, vars, MonomialOrder::new(m + n, blocks)?)?;

        let param_blocks = if m > 0 {
            vec![OrderBlock::new(param_idx, param_order.kind)]
        } else {
            Vec::new()
        };
        let param_ring = Ring::new(field, params.clone(), MonomialOrder::new(m, param_blocks)?)?;
        let main_blocks = if n > 0 {
            vec![OrderBlock::new(
                main_idx.iter().map(|i| i - m).collect(),
                main_order.kind,
            )]
        } else {
            Vec::new()
        };
        let main_ring = Ring::new(field, mains.clone(), MonomialOrder::new(n, main_blocks)?)?;

        let base_gens = base
            .iter()
            .map(|g| g.map_by_name(&param_ring))
            .collect::<Result<Vec<_>>>()?;
        let lifted = base_gens
            .iter()
            .map(|g| g.map_by_name(&total))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(FamilyRing {
            field,
            params,
            mains,
            main_order,
            param_order,
            base: BaseRelations::new(&param_ring, base_gens)?,
            total_base: BaseRelations::new(&total, lifted)?,
            total,
            param_ring,
            main_ring,
        }))
    }

    /// Lex on both blocks, variables ranked as listed, base given as text.
    pub fn lex(
        field: Field,
        params: &[&str],
        mains: &[&str],
        base: &[&str],
    ) -> Result<Arc<FamilyRing>> {
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let mains: Vec<String> = mains.iter().map(|s| s.to_string()).collect();
        let param_ring = Ring::new(field, params.clone(), MonomialOrder::lex(params.len()))?;
        let base = base
            .iter()
            .map(|s| Polynomial::parse(&param_ring, s))
            .collect::<Result<Vec<_>>>()?;
        FamilyRing::new(
            field,
            params.clone(),
            mains.clone(),
            BlockSpec::lex(&mains),
            BlockSpec::lex(&params),
            &base,
        )
    }

    /// Same ring with additional base relations.
    pub fn with_extra_base(&self, extra: &[Polynomial]) -> Result<Arc<FamilyRing>> {
        let mut base = self.base.generators().to_vec();
        base.extend(extra.iter().cloned());
        FamilyRing::new(
            self.field,
            self.params.clone(),
            self.mains.clone(),
            self.main_order.clone(),
            self.param_order.clone(),
            &base,
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn mains(&self) -> &[String] {
        &self.mains
    }

    pub fn main_order(&self) -> &BlockSpec {
        &self.main_order
    }

    pub fn param_order(&self) -> &BlockSpec {
        &self.param_order
    }

    /// `k[a, x]` with the product order.
    pub fn total_ring(&self) -> &Arc<Ring> {
        &self.total
    }

    /// `k[a]` with the parameter order.
    pub fn param_ring(&self) -> &Arc<Ring> {
        &self.param_ring
    }

    /// `k[x]` with the main order, where fibers live.
    pub fn main_ring(&self) -> &Arc<Ring> {
        &self.main_ring
    }

    /// `J0` in `k[a]`.
    pub fn base(&self) -> &Arc<BaseRelations> {
        &self.base
    }

    /// `J0 k[a, x]`.
    pub fn total_base(&self) -> &Arc<BaseRelations> {
        &self.total_base
    }

    pub fn has_base(&self) -> bool {
        !self.base.is_trivial()
    }

    pub fn main_indices(&self) -> std::ops::Range<usize> {
        self.params.len()..self.params.len() + self.mains.len()
    }

    /// The `x`-part of a total-ring exponent.
    pub fn main_part(&self, e: &Exponent) -> Exponent {
        Exponent::new(e.as_slice()[self.params.len()..].to_vec())
    }

    /// The `a`-part of a total-ring exponent.
    pub fn param_part(&self, e: &Exponent) -> Exponent {
        Exponent::new(e.as_slice()[..self.params.len()].to_vec())
    }

    /// Rendering of `x^E`, `1` for the zero exponent.
    pub fn format_main_monomial(&self, e: &Exponent) -> String {
        let s = format_monomial(&self.mains, e);
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    /// Lifts a parameter polynomial into `k[a, x]`.
    pub fn lift_param(&self, f: &Polynomial) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = (0..self.params.len()).map(Some).collect();
        f.map_vars(&self.total, &map)
    }

    /// Projects a total-ring polynomial free of main variables to `k[a]`.
    pub fn to_param(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut map: Vec<Option<usize>> = (0..self.params.len()).map(Some).collect();
        map.extend(std::iter::repeat_n(None, self.mains.len()));
        f.map_vars(&self.param_ring, &map)
    }

    /// `c(a) * x^E` in the total ring.
    pub fn term_in_total(&self, c: &Polynomial, e: &Exponent) -> Result<Polynomial> {
        let mut exp = vec![0u32; self.params.len()];
        exp.extend_from_slice(e.as_slice());
        self.lift_param(c)?
            .mul_term(&self.field.one(), &Exponent::new(exp))
    }

    pub fn param_ideal(&self, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        IdealHandle::new(&self.base, gens)
    }
}

/// An ideal `I ⊂ A[x]`, with the reduced basis of `I + J0` cached.
#[derive(Clone, Debug)]
pub struct FamilyIdeal {
    family: Arc<FamilyRing>,
    ideal: IdealHandle,
}

impl FamilyIdeal {
    pub fn new(family: &Arc<FamilyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        Ok(FamilyIdeal {
            ideal: IdealHandle::new(family.total_base(), gens)?,
            family: family.clone(),
        })
    }

    /// Parses each generator in the total ring.
    pub fn parse(family: &Arc<FamilyRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(family.total_ring(), s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, polys)
    }

    pub fn family(&self) -> &Arc<FamilyRing> {
        &self.family
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    /// Reduced basis of `I + J0` in `k[a, x]`.
    pub fn basis(&self) -> Result<&GroebnerBasis> {
        self.ideal.basis()
    }
}

/// A `k`-rational point of `Spec A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    values: HashMap<String, Coefficient>,
}

impl RationalPoint {
    /// Checks that every parameter is assigned and every `J0` generator vanishes.
    pub fn new(family: &FamilyRing, values: HashMap<String, Coefficient>) -> Result<Self> {
        for name in values.keys() {
            if !family.params().contains(name) {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        for name in family.params() {
            if !values.contains_key(name) {
                return Err(Error::MissingAssignment(name.clone()));
            }
        }
        for g in family.base().generators() {
            let v = g.evaluate(&values)?;
            if !family.field().is_zero(&v) {
                return Err(Error::precondition(format!(
                    "point does not satisfy base relation {g} (value {v})"
                )));
            }
        }
        Ok(RationalPoint { values })
    }

    pub fn from_ints(family: &FamilyRing, values: &[(&str, i64)]) -> Result<Self> {
        let field = family.field();
        Self::new(
            family,
            values
                .iter()
                .map(|(k, v)| (k.to_string(), field.from_i64(*v)))
                .collect(),
        )
    }

    pub fn values(&self) -> &HashMap<String, Coefficient> {
        &self.values
    }

    /// `a1=v1, a2=v2` in parameter order.
    pub fn describe(&self, family: &FamilyRing) -> String {
        family
            .params()
            .iter()
            .map(|p| format!("{p}={}", self.values[p]))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// An ideal `p ⊂ k[a]` that is trusted to be prime and checked to contain `J0`.
#[derive(Clone, Debug)]
pub struct PrimeSpec {
    ideal: IdealHandle,
}

impl PrimeSpec {
    pub fn new(family: &FamilyRing, gens: Vec<Polynomial>) -> Result<Self> {
        let gb = groebner::groebner_basis(family.param_ring(), &gens)?;
        for g in family.base().generators() {
            if !gb.contains(g)? {
                return Err(Error::precondition(format!(
                    "prime does not contain base relation {g}"
                )));
            }
        }
        Ok(PrimeSpec {
            ideal: family.param_ideal(gens)?,
        })
    }

    pub fn parse(family: &FamilyRing, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(family.param_ring(), s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, polys)
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }
}

/// Cached computations may be shared between threads.
#[allow(dead_code)]
fn assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<FamilyIdeal>();
    check::<OnceLock<GroebnerBasis>>();
}
