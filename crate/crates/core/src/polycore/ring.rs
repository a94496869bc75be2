use std::fmt;
use std::sync::Arc;

use super::coeff::Field;
use super::monomial::{MonomialOrder, OrderBlock, PrimitiveOrder};
use crate::error::{Error, Result};

/// A polynomial ring `k[v_1, ..., v_n]` with a fixed monomial order.
///
/// Variable names are interned here; polynomials only ever see indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if order.nvars() != vars.len() {
            return Err(Error::DimensionMismatch {
                expected: vars.len(),
                found: order.nvars(),
            });
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidOrder(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// Ring with one block of the given primitive order, variables ranked as listed.
    pub fn with_order(field: Field, vars: &[&str], kind: PrimitiveOrder) -> Arc<Ring> {
        let order = MonomialOrder::single(vars.len(), kind);
        Ring::new(field, vars.iter().map(|s| s.to_string()).collect(), order)
            .expect("single-block order is always valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Adjoins a fresh variable (appended as the last index) in a new block
    /// that dominates every existing block.
    pub fn with_dominant_var(&self, hint: &str) -> Arc<Ring> {
        let mut name = hint.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let n = self.nvars();
        let mut vars = self.vars.clone();
        vars.push(name);
        let mut blocks = vec![OrderBlock::new(vec![n], PrimitiveOrder::Lex)];
        blocks.extend(self.order.blocks().iter().cloned());
        let order = MonomialOrder::new(n + 1, blocks).expect("extended blocks partition variables");
        Arc::new(Ring {
            field: self.field,
            vars,
            order,
        })
    }

    /// Same variables and field, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.field, self.vars.clone(), order)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

/// Ring identity check used by binary operations.
pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
