use alloc::vec::Vec;

use super::algebroid::Agd;
use super::section::Section;
use crate::error::Result;
use crate::psido::Flavor;
use crate::symjet::{DiffPoly, Evolutionary, Functional, Q};

/// D_Y(δ_X W_j) − D_X(δ_Y W_j) − δ_⌊X,Y⌋ W_j for every j; zero when the anchor is a
/// homomorphism for the composition order D_Y∘D_X.
pub fn homomorphism_defect(agd: &Agd, x: &Section, y: &Section) -> Result<Vec<DiffPoly>> {
    let (dx, dy) = (agd.induced_action(x)?, agd.induced_action(y)?);
    let (vx, vy) = (agd.anchor(x)?, agd.anchor(y)?);
    let (b, _) = agd.lie_bracket(x, y)?;
    let vb = agd.anchor(&b)?;
    let mut out = Vec::new();
    for j in 0..vx.len() {
        out.push(&(&dy.apply(&vx[j])? - &dx.apply(&vy[j])?) - &vb[j]);
    }
    Ok(out)
}

/// A derivation applied to every coefficient of a section.
pub fn vary_section(d: &Evolutionary, s: &Section) -> Result<Section> {
    s.try_map_coeffs(|_, a| d.apply(a))
}

/// Σ_cp (⌊⌊X,Y⌋,Z⌋ + D_Z⌊X,Y⌋): the bracket's Jacobi sum completed by the variation of its
/// structure functions along the anchor. Over SL opers the sum is normalized by `sl_correct`, since
/// the ∂^{-N} slot is fixed by the section condition.
pub fn jacobi_defect(agd: &Agd, x: &Section, y: &Section, z: &Section) -> Result<Section> {
    let mut total = Section::zero(x.ring(), agd.n());
    for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
        let (pq, _) = agd.lie_bracket(p, q)?;
        let (outer, _) = agd.lie_bracket(&pq, r)?;
        let var = vary_section(&agd.induced_action(r)?, &pq)?;
        total = &(&total + &outer) + &var;
    }
    match agd.oper().flavor() {
        Flavor::Sl => agd.sl_correct(&total),
        Flavor::Gl => Ok(total),
    }
}

/// Coboundary of a one-cochain: D_X c(Y) − D_Y c(X) + c(⌊X,Y⌋).
pub fn cocycle_defect(
    agd: &Agd,
    c: &dyn Fn(&Section) -> Result<Functional>,
    x: &Section,
    y: &Section,
) -> Result<Functional> {
    let (dx, dy) = (agd.induced_action(x)?, agd.induced_action(y)?);
    let (b, _) = agd.lie_bracket(x, y)?;
    let first = Functional::new(dx.apply(&c(y)?.density)?);
    let second = Functional::new(dy.apply(&c(x)?.density)?);
    Ok(&(&first - &second) + &c(&b)?)
}

/// Coefficients λ with c(X) = Σ λ_i D_X F_i on every probe section, if they exist.
pub fn coboundary_primitive(
    agd: &Agd,
    c: &dyn Fn(&Section) -> Result<Functional>,
    probes: &[Section],
    candidates: &[Functional],
) -> Result<Option<Vec<Q>>> {
    let mut system = Vec::new();
    for x in probes {
        let d = agd.induced_action(x)?;
        let basis = candidates.iter().map(|f| Ok(Functional::new(d.apply(&f.density)?))).collect::<Result<Vec<_>>>()?;
        system.push((c(x)?, basis));
    }
    Ok(Functional::solve_linear(&system))
}

/// The coefficient of ∂^{N−1} in δ_Y L next to κ^N Res[Y, L]; the two agree for every Y.
pub fn w1_defect(agd: &Agd, y: &Section) -> Result<(DiffPoly, DiffPoly)> {
    let n = agd.oper().order();
    let top = agd.anchor_operator(y)?.coeff(n - 1);
    Ok((top, agd.sop_residue(y)?.kappa_shift(n)))
}

/// Highest κ-power part of ∂_κ(scale · {l_X, l_Y}) that is nonzero as a Functional, with its
/// power.
pub fn central_term_leading(agd: &Agd, x: &Section, y: &Section, scale: &DiffPoly) -> Result<Option<(i32, DiffPoly)>> {
    let density = (scale * &agd.agd_bracket(x, y)?.density).d_kappa();
    let Some((lo, hi)) = density.kappa_range() else { return Ok(None) };
    for p in (lo..=hi).rev() {
        let part = density.kappa_part(p);
        if !Functional::new(part.clone()).is_zero() {
            return Ok(Some((p, part)));
        }
    }
    Ok(None)
}
