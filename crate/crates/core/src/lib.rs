//! Gröbner bases over `k[a]/J0`, relative initial ideals and their
//! coefficient ideals, and the loci read off from them.

pub mod error;
pub mod families;
pub mod frontend;
pub mod groebner;
pub mod idealops;
pub mod monofam;
pub mod polycore;

pub use error::{Error, ParseError, Result, Span};
pub use families::{FamilyIdeal, FamilyRing, PrimeSpec, RationalPoint, RelativeInitial, Window};
pub use groebner::{groebner_basis, GroebnerBasis};
pub use idealops::{BaseRelations, IdealHandle};
pub use monofam::{MonomialIdealOverPIR, PirBase};
pub use polycore::{Coefficient, Exponent, Field, MonomialOrder, Polynomial, PrimitiveOrder, Ring};
