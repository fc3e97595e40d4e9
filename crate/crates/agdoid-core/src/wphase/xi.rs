use alloc::vec::Vec;

use crate::agd::conformance::xi_sign;
use crate::agd::{embed_n2, embed_n3, unembed_n2, unembed_n3, Agd, Section};
use crate::error::{Error, Result};
use crate::psido::PsiSymbol;
use crate::symjet::DiffPoly;

/// ξ = Σ_{j=1}^{N+1} ν_j ∂^{-j} with ν_{N+1} = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiField {
    section: Section,
}

impl XiField {
    /// Takes the class of `s` and replaces its ∂^{-(N+1)} coefficient by 1.
    pub fn from_section(s: &Section) -> XiField {
        let n = s.n();
        let tail = -(n as i32) - 1;
        let ring = s.ring().clone();
        let mut terms: Vec<(i32, DiffPoly)> =
            s.symbol().coeffs().filter(|(k, _)| *k != tail).map(|(k, a)| (k, a.clone())).collect();
        terms.push((tail, DiffPoly::one(&ring)));
        let section = Section::project(n, &PsiSymbol::from_terms(&ring, terms));
        XiField { section }
    }

    /// `nu[j-1]` is ν_j for j = 1..=N.
    pub fn new(agd: &Agd, nu: &[DiffPoly]) -> Result<XiField> {
        if nu.len() != agd.n() {
            return Err(Error::Invalid(alloc::format!("ξ over an order-{} oper takes {} coefficients", agd.n(), agd.n())));
        }
        Ok(XiField::from_section(&Section::from_coeffs(agd.oper().ring(), agd.n(), nu)?))
    }

    /// The Beltrami field μ at N = 2.
    pub fn n2(agd: &Agd, mu: &DiffPoly) -> Result<XiField> {
        Ok(XiField::from_section(&embed_n2(agd, mu)?.scale(&xi_sign(2))))
    }

    /// The fields (μ, ρ) at N = 3.
    pub fn n3(agd: &Agd, mu: &DiffPoly, rho: &DiffPoly) -> Result<XiField> {
        Ok(XiField::from_section(&embed_n3(agd, mu, rho)?.scale(&xi_sign(3))))
    }

    pub fn n(&self) -> usize {
        self.section.n()
    }

    pub fn section(&self) -> &Section {
        &self.section
    }

    pub fn symbol(&self) -> &PsiSymbol {
        self.section.symbol()
    }

    /// ν_j.
    pub fn nu(&self, j: usize) -> DiffPoly {
        self.section.coeff(j)
    }
}

/// Reads μ from a variation of ξ at N = 2.
pub fn read_n2(delta: &Section) -> DiffPoly {
    unembed_n2(delta).scale(&xi_sign(2))
}

/// Reads (μ, ρ) from a variation of ξ at N = 3.
pub fn read_n3(delta: &Section) -> (DiffPoly, DiffPoly) {
    let (m, r) = unembed_n3(delta);
    (m.scale(&xi_sign(3)), r.scale(&xi_sign(3)))
}
