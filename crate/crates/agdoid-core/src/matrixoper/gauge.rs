use super::matrix::MatrixPoly;
use crate::error::Result;
use crate::symjet::{qf, DiffPoly};

/// ∂̄A − κ∂Ā + [Ā, A].
pub fn curvature(a: &MatrixPoly, abar: &MatrixPoly) -> Result<MatrixPoly> {
    a.d_zbar().checked_sub(&abar.d_z().kappa_shift(1))?.checked_add(&abar.commutator(a)?)
}

/// (κ∂ε + [A, ε], ∂̄ε + [Ā, ε]).
pub fn gauge_variation(a: &MatrixPoly, abar: &MatrixPoly, eps: &MatrixPoly) -> Result<(MatrixPoly, MatrixPoly)> {
    let da = eps.d_z().kappa_shift(1).checked_add(&a.commutator(eps)?)?;
    let dabar = eps.d_zbar().checked_add(&abar.commutator(eps)?)?;
    Ok((da, dabar))
}

/// κⁿ∂ⁿf.
fn kd(f: &DiffPoly, n: u32) -> DiffPoly {
    f.d_z_n(n).kappa_shift(n as i32)
}

/// The antiholomorphic component paired with the SL3 companion form.
pub fn abar_matrix(t: &DiffPoly, w: &DiffPoly, mu: &DiffPoly, rho: &DiffPoly) -> Result<MatrixPoly> {
    let r = t.ring();
    let s = &(&kd(rho, 2) - &(t * rho));
    let (two, third) = (qf(2, 3), qf(1, 3));
    let a11 = &(-&s.scale(&two)) + &kd(mu, 1);
    let a12 = &(-mu) + &kd(rho, 1);
    let a21 = &(&(-&kd(s, 1).scale(&two)) + &kd(mu, 2)) - &(w * rho);
    let a22 = s.scale(&third);
    let a31 = &(&(&(-&kd(s, 2).scale(&two)) + &kd(mu, 3)) - &kd(&(w * rho), 1)) - &(w * mu);
    let a32 = &(&(&(-&kd(s, 1).scale(&third)) + &kd(mu, 2)) - &(w * rho)) - &(t * mu);
    let a33 = &s.scale(&third) - &kd(mu, 1);
    MatrixPoly::from_rows(
        r,
        alloc::vec![
            alloc::vec![a11, a12, -rho],
            alloc::vec![a21, a22, -mu],
            alloc::vec![a31, a32, a33],
        ],
    )
}
