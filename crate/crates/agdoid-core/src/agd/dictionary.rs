use alloc::format;

use super::algebroid::Agd;
use super::section::Section;
use crate::error::{Error, Result};
use crate::psido::Flavor;
use crate::symjet::DiffPoly;

fn require(agd: &Agd, n: usize) -> Result<()> {
    if agd.n() != n || agd.oper().flavor() != Flavor::Sl {
        return Err(Error::Invalid(format!("dictionary needs an SL{n} oper")));
    }
    Ok(())
}

/// The vector-field section ε ↦ −(ε/κ)∂⁻¹, SL-corrected.
pub fn embed_n2(agd: &Agd, eps: &DiffPoly) -> Result<Section> {
    require(agd, 2)?;
    let y1 = -eps.kappa_shift(-1);
    agd.sl_correct(&Section::from_coeffs(eps.ring(), 2, &[y1])?)
}

pub fn unembed_n2(x: &Section) -> DiffPoly {
    -x.coeff(1).kappa_shift(1)
}

/// (ε1, ε2) ↦ (ε2/κ)∂⁻¹ + ((ε1 − κε2′)/κ²)∂⁻², SL-corrected.
pub fn embed_n3(agd: &Agd, e1: &DiffPoly, e2: &DiffPoly) -> Result<Section> {
    require(agd, 3)?;
    let y1 = e2.kappa_shift(-1);
    let y2 = (e1 - &e2.d_z().kappa_shift(1)).kappa_shift(-2);
    agd.sl_correct(&Section::from_coeffs(e1.ring(), 3, &[y1, y2])?)
}

/// Inverse of `embed_n3` on the first two coefficients: returns (ε1, ε2).
pub fn unembed_n3(x: &Section) -> (DiffPoly, DiffPoly) {
    let e2 = x.coeff(1).kappa_shift(1);
    let e1 = &x.coeff(2).kappa_shift(2) + &e2.d_z().kappa_shift(1);
    (e1, e2)
}
