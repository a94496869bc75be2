//! Inputs shared by the benchmarks.

use std::sync::Arc;

use flatgb::families::FamilyRing;
use flatgb::{FamilyIdeal, Field, Polynomial, PrimitiveOrder, Ring};

/// The cyclic-`n` system in `k[x0..x(n-1)]` under grevlex.
pub fn cyclic(n: usize, field: Field) -> (Arc<Ring>, Vec<Polynomial>) {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::with_order(field, &refs, PrimitiveOrder::GrevLex);
    let mut gens = Vec::new();
    for d in 1..n {
        let mut sum = Polynomial::zero(&ring);
        for start in 0..n {
            let mut term = Polynomial::one(&ring);
            for k in 0..d {
                let v = Polynomial::var(&ring, (start + k) % n);
                term = term.try_mul(&v).expect("same ring");
            }
            sum = sum.try_add(&term).expect("same ring");
        }
        gens.push(sum);
    }
    let mut prod = Polynomial::one(&ring);
    for i in 0..n {
        prod = prod.try_mul(&Polynomial::var(&ring, i)).expect("same ring");
    }
    gens.push(prod.try_sub(&Polynomial::one(&ring)).expect("same ring"));
    (ring, gens)
}

pub fn fitex() -> FamilyIdeal {
    let fam = FamilyRing::lex(Field::Rationals, &["a"], &["x", "y"], &[]).expect("valid ring");
    FamilyIdeal::parse(&fam, &["a*x + y", "x^3", "x^2*y", "x*y^2", "y^3"]).expect("valid ideal")
}

pub fn redex() -> FamilyIdeal {
    let fam = FamilyRing::lex(
        Field::Rationals,
        &["a", "b", "c", "d"],
        &["x", "y"],
        &["a*c", "a*d", "b*c", "b*d"],
    )
    .expect("valid ring");
    FamilyIdeal::parse(&fam, &["a*x + b", "c*y + d"]).expect("valid ideal")
}

pub fn ex2() -> FamilyIdeal {
    let fam = FamilyRing::lex(Field::Rationals, &["a", "b"], &["x", "y"], &[]).expect("valid ring");
    FamilyIdeal::parse(&fam, &["a*x^2 + y", "b*y^2 + y + 1"]).expect("valid ideal")
}
