//! Graded differential polynomials in jet coordinates, with total derivatives and the
//! variational calculus built on them.

mod calculus;
mod derivation;
mod functional;
mod poly;
mod ring;

pub use derivation::Evolutionary;
pub use functional::Functional;
pub use poly::{fmt_rational, q, qf, DiffPoly, Monomial, Product, Q};
pub use ring::{FieldId, FieldSymbol, JetKey, Parity, Ring};
