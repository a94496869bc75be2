use crate::error::{Error, Result};
use crate::polycore::{Polynomial, Term};

/// `(L/lt(f))*f - (L/lt(g))*g` with `L` the lcm of the leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let lf = f.leading_term()?;
    let lg = g.leading_term()?;
    let field = f.field();
    let lcm = lf.exp.lcm(&lg.exp);
    let mf = lcm.checked_div(&lf.exp).expect("lcm is a multiple");
    let mg = lcm.checked_div(&lg.exp).expect("lcm is a multiple");
    // monic multiples so the leading coefficients cancel
    let left = f.mul_term(&field.inv(&lf.coeff)?, &mf)?;
    left.sub_mul_term(&field.inv(&lg.coeff)?, &mg, g)
}

/// Index of the first basis element whose leading monomial divides the
/// leading monomial of `t`.
fn find_reducer(t: &Term, basis: &[Polynomial]) -> Option<usize> {
    basis
        .iter()
        .position(|g| g.lead_exp().is_some_and(|e| e.divides(&t.exp)))
}

/// Fully reduced remainder of `f` modulo `basis`. Reducers are tried in
/// basis order, so the result is deterministic for a fixed basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    for g in basis {
        if !std::sync::Arc::ptr_eq(g.ring(), f.ring()) && **g.ring() != **f.ring() {
            return Err(Error::RingMismatch);
        }
    }
    let basis: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    let field = f.field();
    let mut p = f.clone();
    let mut remainder: Vec<Term> = Vec::new();
    while let Some(lt) = p.terms().first() {
        let reducer = basis
            .iter()
            .find(|g| g.lead_exp().is_some_and(|e| e.divides(&lt.exp)));
        match reducer {
            Some(g) => {
                let lg = g.leading_term()?;
                let c = field.div(&lt.coeff, &lg.coeff)?;
                let m = lt.exp.checked_div(&lg.exp).expect("divisibility checked");
                p = p.sub_mul_term(&c, &m, g)?;
            }
            None => remainder.push(p.pop_leading().expect("nonzero")),
        }
    }
    Ok(Polynomial::from_sorted_terms(f.ring(), remainder))
}

/// True if no term of `f` is divisible by a leading monomial of `basis`.
pub fn is_reduced_against(f: &Polynomial, basis: &[Polynomial]) -> bool {
    f.terms().iter().all(|t| find_reducer(t, basis).is_none())
}
