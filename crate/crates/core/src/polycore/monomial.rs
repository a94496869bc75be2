//! Exponent vectors and block monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one slot per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponent(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// `self <= other` componentwise, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Exponent) -> Result<Exponent> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Exponent)
    }

    /// Quotient `x^self / x^other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Exponent) -> Option<Exponent> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True if the two monomials share no variable.
    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn project(&self, vars: &[usize]) -> Exponent {
        Exponent(vars.iter().map(|&v| self.0[v]).collect())
    }

    fn check_dim(&self, other: &Exponent) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimitiveOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl PrimitiveOrder {
    pub fn name(&self) -> &'static str {
        match self {
            PrimitiveOrder::Lex => "lex",
            PrimitiveOrder::GrLex => "grlex",
            PrimitiveOrder::GrevLex => "grevlex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "lex" => Some(PrimitiveOrder::Lex),
            "grlex" | "deglex" => Some(PrimitiveOrder::GrLex),
            "grevlex" | "degrevlex" => Some(PrimitiveOrder::GrevLex),
            _ => None,
        }
    }
}

/// A block of variables compared with one primitive order. The listed
/// variables are ranked from greatest to smallest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub kind: PrimitiveOrder,
}

impl OrderBlock {
    pub fn new(vars: Vec<usize>, kind: PrimitiveOrder) -> Self {
        OrderBlock { vars, kind }
    }

    fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        let lex = || {
            for &v in &self.vars {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        };
        let degree = |e: &[u32]| self.vars.iter().map(|&v| e[v] as u64).sum::<u64>();
        match self.kind {
            PrimitiveOrder::Lex => lex(),
            PrimitiveOrder::GrLex => degree(a).cmp(&degree(b)).then_with(lex),
            PrimitiveOrder::GrevLex => degree(a).cmp(&degree(b)).then_with(|| {
                for &v in self.vars.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Product order: blocks are compared in sequence and earlier blocks dominate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    nvars: usize,
    blocks: Vec<OrderBlock>,
}

impl MonomialOrder {
    /// Builds a block order; the blocks must partition `0..nvars`.
    pub fn new(nvars: usize, blocks: Vec<OrderBlock>) -> Result<Self> {
        let mut seen = vec![false; nvars];
        for block in &blocks {
            if block.vars.is_empty() {
                return Err(Error::InvalidOrder("empty block".into()));
            }
            for &v in &block.vars {
                if v >= nvars {
                    return Err(Error::InvalidOrder(format!(
                        "variable index {v} out of range"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidOrder(format!("variable index {v} repeated")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidOrder(format!(
                "variable index {missing} not covered by any block"
            )));
        }
        Ok(MonomialOrder { nvars, blocks })
    }

    /// A single block over all variables in index order.
    pub fn single(nvars: usize, kind: PrimitiveOrder) -> Self {
        let blocks = if nvars == 0 {
            Vec::new()
        } else {
            vec![OrderBlock::new((0..nvars).collect(), kind)]
        };
        MonomialOrder { nvars, blocks }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::single(nvars, PrimitiveOrder::Lex)
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::single(nvars, PrimitiveOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[OrderBlock] {
        &self.blocks
    }

    /// Comparison without dimension checks, for hot paths.
    #[inline]
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        debug_assert_eq!(a.len(), self.nvars);
        debug_assert_eq!(b.len(), self.nvars);
        for block in &self.blocks {
            match block.compare(&a.0, &b.0) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Restriction to the variables not in `dropped`, keeping block structure.
    pub fn restrict(&self, dropped: &[usize]) -> Vec<OrderBlock> {
        self.blocks
            .iter()
            .filter_map(|b| {
                let vars: Vec<usize> = b
                    .vars
                    .iter()
                    .copied()
                    .filter(|v| !dropped.contains(v))
                    .collect();
                (!vars.is_empty()).then(|| OrderBlock::new(vars, b.kind))
            })
            .collect()
    }

    /// True if every variable of `vars` is greater than every other variable
    /// in a way that makes this an elimination order for `vars`.
    pub fn eliminates(&self, vars: &[usize]) -> bool {
        let mut remaining = vars.len();
        for block in &self.blocks {
            if remaining == 0 {
                return true;
            }
            if block.vars.iter().all(|v| vars.contains(v)) {
                remaining -= block.vars.len();
            } else {
                return false;
            }
        }
        remaining == 0
    }
}

/// Compares two monomials, checking that both match the order's variable count.
pub fn compare_monomials(order: &MonomialOrder, m1: &Exponent, m2: &Exponent) -> Result<Ordering> {
    for m in [m1, m2] {
        if m.len() != order.nvars {
            return Err(Error::DimensionMismatch {
                expected: order.nvars,
                found: m.len(),
            });
        }
    }
    Ok(order.cmp(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn lex_x_greater_than_y() {
        let lex = MonomialOrder::lex(2);
        assert_eq!(
            compare_monomials(&lex, &e(&[1, 0]), &e(&[0, 1])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn product_order_breaks_ties_on_parameters() {
        // variables: x=0, y=1, a=2, b=3
        let order = MonomialOrder::new(
            4,
            vec![
                OrderBlock::new(vec![0, 1], PrimitiveOrder::Lex),
                OrderBlock::new(vec![2, 3], PrimitiveOrder::Lex),
            ],
        )
        .unwrap();
        // a*x vs x
        assert_eq!(
            order.cmp(&e(&[1, 0, 1, 0]), &e(&[1, 0, 0, 0])),
            Ordering::Greater
        );
        // x vs a^5*y: x-block dominates
        assert_eq!(
            order.cmp(&e(&[1, 0, 0, 0]), &e(&[0, 1, 5, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn grevlex_larger_last_exponent_loses() {
        let order = MonomialOrder::grevlex(2);
        assert_eq!(order.cmp(&e(&[1, 2]), &e(&[2, 1])), Ordering::Less);
        // degree first
        assert_eq!(order.cmp(&e(&[0, 3]), &e(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn grlex_vs_grevlex_differ_in_three_variables() {
        // x*z^2 vs y^3: grlex says x z^2 > y^3; grevlex says y^3 > x z^2
        let grlex = MonomialOrder::single(3, PrimitiveOrder::GrLex);
        let grevlex = MonomialOrder::grevlex(3);
        assert_eq!(grlex.cmp(&e(&[1, 0, 2]), &e(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&e(&[1, 0, 2]), &e(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let lex = MonomialOrder::lex(2);
        assert_eq!(
            compare_monomials(&lex, &e(&[1, 0, 0]), &e(&[0, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn blocks_must_partition_variables() {
        assert!(
            MonomialOrder::new(2, vec![OrderBlock::new(vec![0], PrimitiveOrder::Lex)]).is_err()
        );
        assert!(MonomialOrder::new(
            2,
            vec![
                OrderBlock::new(vec![0, 1], PrimitiveOrder::Lex),
                OrderBlock::new(vec![1], PrimitiveOrder::Lex)
            ]
        )
        .is_err());
    }

    #[test]
    fn elimination_detection() {
        let order = MonomialOrder::new(
            3,
            vec![
                OrderBlock::new(vec![2], PrimitiveOrder::Lex),
                OrderBlock::new(vec![0, 1], PrimitiveOrder::GrevLex),
            ],
        )
        .unwrap();
        assert!(order.eliminates(&[2]));
        assert!(order.eliminates(&[]));
        assert!(!order.eliminates(&[0]));
        assert!(MonomialOrder::lex(3).eliminates(&[0, 1, 2]));
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        let kind = prop_oneof![
            Just(PrimitiveOrder::Lex),
            Just(PrimitiveOrder::GrLex),
            Just(PrimitiveOrder::GrevLex)
        ];
        (
            Just(Vec::from([0usize, 1, 2, 3])).prop_shuffle(),
            1usize..4,
            kind.clone(),
            kind,
        )
            .prop_map(|(perm, split, k1, k2)| {
                MonomialOrder::new(
                    4,
                    vec![
                        OrderBlock::new(perm[..split].to_vec(), k1),
                        OrderBlock::new(perm[split..].to_vec(), k2),
                    ],
                )
                .unwrap()
            })
    }

    fn arb_exp() -> impl Strategy<Value = Exponent> {
        prop::collection::vec(0u32..4, 4).prop_map(Exponent::new)
    }

    proptest! {
        #[test]
        fn order_axioms(order in arb_order(), a in arb_exp(), b in arb_exp(), c in arb_exp()) {
            // antisymmetry / totality
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
            prop_assert_eq!(order.cmp(&a, &b) == Ordering::Equal, a == b);
            // transitivity
            if order.cmp(&a, &b) != Ordering::Less && order.cmp(&b, &c) != Ordering::Less {
                prop_assert_ne!(order.cmp(&a, &c), Ordering::Less);
            }
            // multiplicativity
            let ac = a.checked_mul(&c).unwrap();
            let bc = b.checked_mul(&c).unwrap();
            prop_assert_eq!(order.cmp(&ac, &bc), order.cmp(&a, &b));
            // every nonconstant monomial exceeds 1
            if !a.is_zero() {
                prop_assert_eq!(order.cmp(&a, &Exponent::zero(4)), Ordering::Greater);
            }
        }
    }
}
