use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::initial::{base_contraction, relative_initial, RelativeInitial};
use super::{FamilyIdeal, FamilyRing, PrimeSpec, RationalPoint};
use crate::error::{Error, Result};
use crate::groebner::{self, minimal_monomials, monomial_ideal_contains};
use crate::idealops::IdealHandle;
use crate::polycore::{Exponent, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusKind {
    Flat,
    Iso,
    Finite,
}

impl LocusKind {
    pub fn name(&self) -> &'static str {
        match self {
            LocusKind::Flat => "flat",
            LocusKind::Iso => "iso",
            LocusKind::Finite => "finite",
        }
    }
}

/// One contribution to a locus: the coefficient ideal it comes from and
/// the ideal it contributes to the intersection.
#[derive(Clone, Debug)]
pub struct FlatComponent {
    pub label: String,
    pub exponent: Option<Exponent>,
    pub coefficient_ideal: IdealHandle,
    pub ideal: IdealHandle,
    pub by_zero: bool,
}

/// An element `s` of the locus ideal with `s` not nilpotent modulo `I ∩ A`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub element: Polynomial,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub kind: LocusKind,
    pub components: Vec<FlatComponent>,
    pub combined: IdealHandle,
    pub contraction: IdealHandle,
    pub witness: Option<Witness>,
}

impl LocusReport {
    /// No generator of the combined ideal survives in `A/(I ∩ A)`.
    pub fn inconclusive(&self) -> bool {
        self.witness.is_none()
    }
}

/// Flat-locus output shares the locus report layout.
pub type FlatLocus = LocusReport;

fn find_witness(combined: &IdealHandle, contraction: &IdealHandle) -> Result<Option<Witness>> {
    for s in combined.reduced_generators()? {
        if !contraction.radical_member(&s)? {
            let notes = vec![
                format!("{s} is a generator of the locus ideal"),
                format!(
                    "1 is not in (I ∩ A) + (1 - w*({s})), so {s} is not nilpotent modulo I ∩ A"
                ),
            ];
            return Ok(Some(Witness { element: s, notes }));
        }
    }
    Ok(None)
}

fn intersect_all(family: &FamilyRing, ideals: &[&IdealHandle]) -> Result<IdealHandle> {
    let mut acc = IdealHandle::unit(family.base());
    for i in ideals {
        acc = acc.intersect(i)?;
    }
    Ok(acc)
}

/// `S = ∩_{E ∈ T} ((J_E² + J0) : J_E)` over the exponents `T`.
pub fn flat_locus(ideal: &FamilyIdeal) -> Result<FlatLocus> {
    let family = ideal.family();
    let rel = relative_initial(ideal)?;
    let contraction = base_contraction(ideal)?;
    let mut components = Vec::new();
    for e in minimal_exponents_of(&rel, &contraction)? {
        let j = rel.coefficient_ideal(&e)?;
        let colon = j.product(&j)?.colon_ideal(&j)?;
        components.push(FlatComponent {
            label: family.format_main_monomial(&e),
            exponent: Some(e),
            coefficient_ideal: j,
            ideal: colon.ideal,
            by_zero: colon.by_zero,
        });
    }
    let combined = intersect_all(
        family,
        &components.iter().map(|c| &c.ideal).collect::<Vec<_>>(),
    )?;
    let witness = find_witness(&combined, &contraction)?;
    Ok(LocusReport {
        kind: LocusKind::Flat,
        components,
        combined,
        contraction,
        witness,
    })
}

/// Nonzero leading exponents whose coefficient ideal differs from `I ∩ A`.
pub(super) fn minimal_exponents_of(
    rel: &RelativeInitial,
    contraction: &IdealHandle,
) -> Result<Vec<Exponent>> {
    let mut out = Vec::new();
    for e in rel.leading_exponents() {
        if !e.is_zero() && !rel.coefficient_ideal(&e)?.equals_mod(contraction)? {
            out.push(e);
        }
    }
    Ok(out)
}

fn per_variable_locus(ideal: &FamilyIdeal, kind: LocusKind) -> Result<LocusReport> {
    let family = ideal.family();
    let rel = relative_initial(ideal)?;
    let contraction = base_contraction(ideal)?;
    let n = family.mains().len();
    let mut components = Vec::new();
    for i in 0..n {
        let (label, exponent, j) = match kind {
            LocusKind::Finite => (
                format!("{}^∞", family.mains()[i]),
                None,
                rel.pure_power_ideal(i)?,
            ),
            _ => {
                let e = Exponent::unit(n, i);
                (
                    family.mains()[i].clone(),
                    Some(e.clone()),
                    rel.coefficient_ideal(&e)?,
                )
            }
        };
        components.push(FlatComponent {
            label,
            exponent,
            coefficient_ideal: j.clone(),
            ideal: j,
            by_zero: false,
        });
    }
    let combined = intersect_all(
        family,
        &components.iter().map(|c| &c.ideal).collect::<Vec<_>>(),
    )?;
    let witness = find_witness(&combined, &contraction)?;
    Ok(LocusReport {
        kind,
        components,
        combined,
        contraction,
        witness,
    })
}

/// Per-variable `in(I)_{x_i}`; `A_p → M_p` is onto where all are `(1)`.
pub fn iso_locus(ideal: &FamilyIdeal) -> Result<LocusReport> {
    per_variable_locus(ideal, LocusKind::Iso)
}

/// Per-variable `in(I)_{x_i^∞}`; `M_p` is finite where none lies in `p`.
pub fn finite_locus(ideal: &FamilyIdeal) -> Result<LocusReport> {
    per_variable_locus(ideal, LocusKind::Finite)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointVerdict {
    Unit,
    Zero,
    Mixed,
}

impl fmt::Display for PointVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointVerdict::Unit => "unit",
            PointVerdict::Zero => "zero",
            PointVerdict::Mixed => "mixed",
        })
    }
}

/// Verdicts per leading exponent, conditional on the prime being prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPointVerdict {
    /// `I ∩ A ⊄ p`: the local quotient ring is zero.
    pub contraction_escapes: bool,
    pub entries: Vec<(Exponent, PointVerdict)>,
    pub good: bool,
}

fn escapes(ideal: &IdealHandle, p: &IdealHandle) -> Result<bool> {
    Ok(!p.contains_mod(ideal)?)
}

pub fn good_point(ideal: &FamilyIdeal, prime: &PrimeSpec) -> Result<GoodPointVerdict> {
    let p = prime.ideal();
    let contraction = base_contraction(ideal)?;
    if escapes(&contraction, p)? {
        return Ok(GoodPointVerdict {
            contraction_escapes: true,
            entries: Vec::new(),
            good: true,
        });
    }
    let rel = relative_initial(ideal)?;
    let mut entries = Vec::new();
    for d in rel.leading_exponents() {
        let j = rel.coefficient_ideal(&d)?;
        let verdict = if escapes(&j, p)? {
            PointVerdict::Unit
        } else {
            let mut all_zero = true;
            for g in j.reduced_generators()? {
                if !escapes(&contraction.colon_poly(&g)?, p)? {
                    all_zero = false;
                    break;
                }
            }
            if all_zero {
                PointVerdict::Zero
            } else {
                PointVerdict::Mixed
            }
        };
        entries.push((d, verdict));
    }
    let good = entries.iter().all(|(_, v)| *v != PointVerdict::Mixed);
    Ok(GoodPointVerdict {
        contraction_escapes: false,
        entries,
        good,
    })
}

/// Predicted and actual initial monomial ideals of the fiber at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationReport {
    pub predicted: Vec<Exponent>,
    pub actual: Vec<Exponent>,
    pub equal: bool,
    /// `predicted ⊆ actual`; always true.
    pub contained: bool,
}

pub fn specialization_check(
    ideal: &FamilyIdeal,
    point: &RationalPoint,
) -> Result<SpecializationReport> {
    let family = ideal.family();
    let main_ring = family.main_ring();
    let order = main_ring.order();
    let rel = relative_initial(ideal)?;
    let field = family.field();
    let mut predicted = Vec::new();
    for en in rel.entries() {
        if !field.is_zero(&en.coefficient.evaluate(point.values())?) {
            predicted.push(en.exponent.clone());
        }
    }
    let predicted = minimal_monomials(order, &predicted);

    let fiber = ideal
        .generators()
        .iter()
        .map(|g| g.substitute(point.values(), main_ring))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner::groebner_basis(main_ring, &fiber)?;
    let actual_leads: Vec<Exponent> = gb.leading_exponents().into_iter().cloned().collect();
    let actual = minimal_monomials(order, &actual_leads);

    Ok(SpecializationReport {
        contained: monomial_ideal_contains(&actual, &predicted),
        equal: predicted == actual,
        predicted,
        actual,
    })
}

/// `(I : s^∞)`, the contraction of `I A_s[x]`, as a new family ideal.
pub fn localize_contract(ideal: &FamilyIdeal, s: &Polynomial) -> Result<FamilyIdeal> {
    let family = ideal.family();
    if s.is_zero() {
        return Err(Error::precondition("localizing element must be nonzero"));
    }
    let lifted = family.lift_param(s)?;
    let sat = ideal.ideal().saturate(&lifted)?;
    FamilyIdeal::new(family, sat.reduced_generators()?)
}

#[derive(Clone, Debug)]
pub struct QuotientCheckEntry {
    pub exponent: Exponent,
    /// `in(I)_D` read modulo `J0 + I ∩ A`.
    pub extended: IdealHandle,
    /// Coefficient ideal of `I` recomputed over `A/(I ∩ A)`.
    pub recomputed: IdealHandle,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct QuotientCheck {
    pub contraction: IdealHandle,
    pub quotient: Arc<FamilyRing>,
    pub entries: Vec<QuotientCheckEntry>,
    pub equal: bool,
}

pub fn quotient_extension_check(ideal: &FamilyIdeal) -> Result<QuotientCheck> {
    let family = ideal.family();
    let contraction = base_contraction(ideal)?;
    let quotient = family.with_extra_base(&contraction.reduced_generators()?)?;
    let regens = ideal
        .generators()
        .iter()
        .map(|g| g.map_by_name(quotient.total_ring()))
        .collect::<Result<Vec<_>>>()?;
    let over_b = FamilyIdeal::new(&quotient, regens)?;

    let rel = relative_initial(ideal)?;
    let rel_b = relative_initial(&over_b)?;
    let mut exps = rel.leading_exponents();
    for e in rel_b.leading_exponents() {
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    let mut entries = Vec::new();
    for e in exps {
        let original = rel.coefficient_ideal(&e)?;
        let moved = original
            .generators()
            .iter()
            .map(|g| g.map_by_name(quotient.param_ring()))
            .collect::<Result<Vec<_>>>()?;
        let extended = quotient.param_ideal(moved)?;
        let recomputed = rel_b.coefficient_ideal(&e)?;
        let equal = extended.equals_mod(&recomputed)?;
        entries.push(QuotientCheckEntry {
            exponent: e,
            extended,
            recomputed,
            equal,
        });
    }
    let equal = entries.iter().all(|e| e.equal);
    Ok(QuotientCheck {
        contraction,
        quotient,
        entries,
        equal,
    })
}
