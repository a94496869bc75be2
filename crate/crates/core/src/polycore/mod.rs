//! Exact coefficients, monomials, block orders and sparse polynomials.

pub mod coeff;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod text;

pub use coeff::{Coefficient, Field, DEFAULT_PRIME};
pub use monomial::{compare_monomials, Exponent, MonomialOrder, OrderBlock, PrimitiveOrder};
pub use poly::{format_monomial, leading_term, poly_add, poly_mul, Polynomial, Term};
pub use ring::Ring;
