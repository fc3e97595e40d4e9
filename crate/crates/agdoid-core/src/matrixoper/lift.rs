use alloc::format;
use alloc::vec::Vec;

use super::matrix::MatrixPoly;
use crate::error::{Error, Result};
use crate::psido::{Flavor, Oper};
use crate::symjet::{q, DiffPoly};

/// Companion form: ones on the superdiagonal, the oper coefficients in the bottom row with W_N
/// in the first column.
pub fn oper_matrix(l: &Oper) -> MatrixPoly {
    let n = l.n();
    let s = q(-l.convention().sign());
    let mut m = MatrixPoly::zero(l.ring(), n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, DiffPoly::one(l.ring()));
    }
    for c in 0..n {
        m.set(n - 1, c, l.w(n - c).scale(&s));
    }
    m
}

/// A traceless solution X of κ∂X − [C, X] = δC and the variations δW_j it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperLift {
    pub x: MatrixPoly,
    /// δW_j at index j−1.
    pub variations: Vec<DiffPoly>,
}

/// Solves for X with last column pinned to (ε_{N−1}, …, ε_1) above the corner. `eps[j-1]` is ε_j.
pub fn solve_oper_lift(l: &Oper, eps: &[DiffPoly]) -> Result<OperLift> {
    let n = l.n();
    if l.flavor() != Flavor::Sl {
        return Err(Error::Invalid("the matrix lift is defined for SL opers".into()));
    }
    if eps.len() + 1 != n {
        return Err(Error::Invalid(format!("an SL{n} lift takes {} parameters, got {}", n - 1, eps.len())));
    }
    let ring = l.ring().clone();
    for e in eps {
        e.same_ring(&DiffPoly::zero(&ring))?;
    }
    let c = oper_matrix(l);
    let w: Vec<DiffPoly> = (0..n).map(|j| c.get(n - 1, j).clone()).collect();
    let last = n - 1;
    let mut x = MatrixPoly::zero(&ring, n);
    for i in 0..last {
        x.set(i, last, eps[last - 1 - i].clone());
    }
    // Rows above the last read X_{i+1,j} = κX'_{ij} + X_{i,j-1} + X_{i,N-1} w_j.
    let step = |x: &MatrixPoly, i: usize, j: usize| -> DiffPoly {
        &(&x.get(i + 1, j).clone() - &x.get(i, j).d_z().kappa_shift(1)) - &(x.get(i, last) * &w[j])
    };
    for d in (1..last).rev() {
        for i in (0..n - 1 - d).rev() {
            let v = step(&x, i, i + d + 1);
            x.set(i, i + d, v);
        }
    }
    let mut offsets = alloc::vec![DiffPoly::zero(&ring); n];
    for i in (0..last).rev() {
        offsets[i] = &offsets[i + 1] + &step(&x, i, i + 1);
    }
    let mut sum = DiffPoly::zero(&ring);
    for o in &offsets {
        sum = &sum + o;
    }
    let corner = sum.scale(&(-q(1) / q(n as i64)));
    for (i, o) in offsets.iter().enumerate() {
        x.set(i, i, &corner + o);
    }
    for i in 0..last {
        for (j, wj) in w.iter().enumerate().take(i + 1) {
            let mut v = &x.get(i, j).d_z().kappa_shift(1) + &(x.get(i, last) * wj);
            if j > 0 {
                v = &v + x.get(i, j - 1);
            }
            x.set(i + 1, j, v);
        }
    }
    let residual = x.d_z().kappa_shift(1).checked_sub(&c.commutator(&x)?)?;
    for i in 0..last {
        for j in 0..n {
            if !residual.get(i, j).is_zero() {
                return Err(Error::Invalid(format!("lift residual at ({}, {}): {}", i + 1, j + 1, residual.get(i, j))));
            }
        }
    }
    if !residual.get(last, last).is_zero() {
        return Err(Error::DegreeViolation { degree: l.order() - 1, max: l.order() - 2 });
    }
    let s = q(-l.convention().sign());
    let variations = (1..=n).map(|j| residual.get(last, n - j).scale(&s)).collect();
    Ok(OperLift { x, variations })
}

/// The last-column parameters of [X₁, X₂] for the lifts of two parameter lists, in the order of
/// `solve_oper_lift`.
pub fn matrix_bracket_oracle(l: &Oper, e1: &[DiffPoly], e2: &[DiffPoly]) -> Result<Vec<DiffPoly>> {
    let (x1, x2) = (solve_oper_lift(l, e1)?, solve_oper_lift(l, e2)?);
    let b = x1.x.commutator(&x2.x)?;
    let n = l.n();
    Ok((1..n).map(|j| b.get(n - 1 - j, n - 1).clone()).collect())
}
