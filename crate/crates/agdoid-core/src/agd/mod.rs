//! Brackets, anchor and central terms of the algebroid on Volterra sections over opers.

mod algebroid;
mod checks;
pub mod conformance;
mod dictionary;
mod section;

pub use algebroid::Agd;
pub use checks::{
    central_term_leading, coboundary_primitive, cocycle_defect, homomorphism_defect, jacobi_defect, vary_section,
    w1_defect,
};
pub use dictionary::{embed_n2, embed_n3, unembed_n2, unembed_n3};
pub use section::{window, CentralTerm, Section};

#[cfg(test)]
pub(crate) mod tests;
