//! Phase space of ξ-fields over opers: constraints, Hamiltonians, the canonical bracket and the
//! linear problem.

mod bracket;
mod phase;
mod xi;

pub use bracket::{canonical_bracket, canonical_pairs, poisson_sign, CanonicalPair};
pub use phase::{
    compatibility_check, compatibility_with, constraint, constraint_operator, dbar_deformation, hamiltonian,
    on_shell_rules, xi_anchor, CompatReport, ConstraintSet,
};
pub use xi::{read_n2, read_n3, XiField};
