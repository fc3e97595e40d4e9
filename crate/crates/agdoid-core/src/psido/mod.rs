//! Formal pseudo-differential symbols in ∂ with differential-polynomial coefficients.

mod oper;
mod symbol;

pub use oper::{reduce_mod_oper, Convention, Flavor, Oper};
pub use symbol::{binom, PsiSymbol, EXACT};
