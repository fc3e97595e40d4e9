use alloc::vec::Vec;

use super::gauge::{abar_matrix, curvature};
use super::lift::oper_matrix;
use super::matrix::MatrixPoly;
use crate::agd::Agd;
use crate::error::Result;
use crate::psido::Oper;
use crate::symjet::DiffPoly;
use crate::wphase::{constraint, XiField};

/// Curvature of the W₃ pair against the constraints.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub curvature: MatrixPoly,
    /// F^(2) and F^(1), placed at (3,1) and (3,2).
    pub expected: MatrixPoly,
    /// Entries where the two differ, with the difference.
    pub mismatches: Vec<(usize, usize, DiffPoly)>,
}

impl CurvatureReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// F(A, Ā) for ∇ = κ∂ + A, ∇̄ = ∂̄ + Ā with A = −C and Ā = −abar_matrix, compared entrywise
/// with the constraints of ξ(μ, ρ).
pub fn verify_w3_curvature(t: &DiffPoly, w: &DiffPoly, mu: &DiffPoly, rho: &DiffPoly) -> Result<CurvatureReport> {
    let oper = Oper::sl3(t, w);
    let agd = Agd::new(oper.clone());
    let f = constraint(&agd, &XiField::n3(&agd, mu, rho)?)?;
    let a = -&oper_matrix(&oper);
    let abar = -&abar_matrix(t, w, mu, rho)?;
    let curv = curvature(&a, &abar)?;
    let mut expected = MatrixPoly::zero(t.ring(), 3);
    expected.set(2, 0, f.get(3).clone());
    expected.set(2, 1, f.get(2).clone());
    let diff = curv.checked_sub(&expected)?;
    let mismatches = diff.support().into_iter().map(|(i, j)| (i, j, diff.get(i, j).clone())).collect();
    Ok(CurvatureReport { curvature: curv, expected, mismatches })
}
