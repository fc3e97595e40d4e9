use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::psido::PsiSymbol;
use crate::symjet::{DiffPoly, Functional, Q, Ring};

/// A Volterra class Σ_{j=1}^{N+1} e_j ∂^{-j}, stored as an exact symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    n: usize,
    symbol: PsiSymbol,
}

impl Section {
    /// Refuses symbols with coefficients outside the window −(N+1)..−1.
    pub fn new(n: usize, symbol: &PsiSymbol) -> Result<Section> {
        let (lo, hi) = window(n);
        for (k, _) in symbol.coeffs() {
            if k < lo || k > hi {
                return Err(Error::Invalid(format!("section coefficient at degree {k} outside [{lo}, {hi}]")));
            }
        }
        if symbol.floor() > lo {
            return Err(Error::FloorTooLow { requested: lo, valid: symbol.floor() });
        }
        Ok(Section::project(n, symbol))
    }

    /// Keeps only the window −(N+1)..−1.
    pub fn project(n: usize, symbol: &PsiSymbol) -> Section {
        let (lo, hi) = window(n);
        let terms: Vec<(i32, DiffPoly)> =
            symbol.coeffs().filter(|(k, _)| *k >= lo && *k <= hi).map(|(k, a)| (k, a.clone())).collect();
        Section { n, symbol: PsiSymbol::from_terms(symbol.ring(), terms) }
    }

    /// `coeffs[j-1]` multiplies ∂^{-j}.
    pub fn from_coeffs(ring: &Ring, n: usize, coeffs: &[DiffPoly]) -> Result<Section> {
        let s = PsiSymbol::from_terms(ring, coeffs.iter().enumerate().map(|(i, a)| (-(i as i32) - 1, a.clone())));
        Section::new(n, &s)
    }

    pub fn zero(ring: &Ring, n: usize) -> Section {
        Section { n, symbol: PsiSymbol::zero(ring) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        self.symbol.ring()
    }

    pub fn symbol(&self) -> &PsiSymbol {
        &self.symbol
    }

    /// Coefficient of ∂^{-j}.
    pub fn coeff(&self, j: usize) -> DiffPoly {
        self.symbol.coeff(-(j as i32))
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Section {
        Section { n: self.n, symbol: self.symbol.scale(c) }
    }

    pub fn left_mul(&self, f: &DiffPoly) -> Section {
        Section { n: self.n, symbol: self.symbol.left_mul(f) }
    }

    pub fn map_coeffs(&self, f: impl FnMut(i32, &DiffPoly) -> DiffPoly) -> Section {
        Section { n: self.n, symbol: self.symbol.map_coeffs(f) }
    }

    pub fn try_map_coeffs(&self, f: impl FnMut(i32, &DiffPoly) -> Result<DiffPoly>) -> Result<Section> {
        Ok(Section { n: self.n, symbol: self.symbol.try_map_coeffs(f)? })
    }

    pub fn checked_add(&self, other: &Section) -> Result<Section> {
        if self.n != other.n {
            return Err(Error::Invalid("sections over opers of different order".into()));
        }
        Ok(Section { n: self.n, symbol: self.symbol.checked_add(&other.symbol)? })
    }
}

/// Degrees −(N+1)..=−1.
pub fn window(n: usize) -> (i32, i32) {
    (-(n as i32) - 1, -1)
}

impl core::ops::Add for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        self.checked_add(rhs).expect("incompatible sections")
    }
}

impl core::ops::Sub for &Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        self.checked_add(&-rhs).expect("incompatible sections")
    }
}

impl core::ops::Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        Section { n: self.n, symbol: -&self.symbol }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)
    }
}

/// ∂_κ of the AGD bracket density.
#[derive(Clone, Debug)]
pub struct CentralTerm {
    pub value: Functional,
}
