use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::xi::XiField;
use crate::agd::conformance::{hamiltonian_scale, xi_sign};
use crate::agd::{window, Agd, Section};
use crate::error::{Error, Result};
use crate::psido::{reduce_mod_oper, Flavor, PsiSymbol, EXACT};
use crate::symjet::{q, DiffPoly, Functional, JetKey};

fn check(agd: &Agd, xi: &XiField) -> Result<()> {
    if xi.n() != agd.n() {
        return Err(Error::Invalid(alloc::format!("ξ of order {} over an oper of order {}", xi.n(), agd.n())));
    }
    Ok(())
}

/// (Lξ)₊ and (ξL)₊.
fn plus_parts(agd: &Agd, xi: &XiField) -> Result<(PsiSymbol, PsiSymbol)> {
    check(agd, xi)?;
    let l = agd.oper().symbol();
    let lx = l.compose(xi.symbol(), EXACT)?.plus_part();
    let xl = xi.symbol().compose(&l, 0)?.plus_part();
    Ok((lx, xl))
}

/// ∂̄L − (Lξ)₊L + L(ξL)₊.
pub fn constraint_operator(agd: &Agd, xi: &XiField) -> Result<PsiSymbol> {
    let l = agd.oper().symbol();
    let (lx, xl) = plus_parts(agd, xi)?;
    let f = &(&l.d_zbar() - &lx.compose(&l, EXACT)?) + &l.compose(&xl, EXACT)?;
    if let Some(d) = f.degree() {
        if d >= agd.oper().order() {
            return Err(Error::DegreeViolation { degree: d, max: agd.oper().order() - 1 });
        }
    }
    Ok(f)
}

/// Constraint densities, one per oper coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    /// The component paired with W_j at index j−1.
    pub components: Vec<DiffPoly>,
}

impl ConstraintSet {
    /// The component paired with W_j.
    pub fn get(&self, j: usize) -> &DiffPoly {
        &self.components[j - 1]
    }
}

/// The read-off of the constraint operator, scaled by the ξ-sign of N.
pub fn constraint(agd: &Agd, xi: &XiField) -> Result<ConstraintSet> {
    let s = xi_sign(agd.n());
    let f = agd.oper().read_off(&constraint_operator(agd, xi)?)?;
    Ok(ConstraintSet { components: f.iter().map(|c| c.scale(&s)).collect() })
}

/// δ_Y ξ = ∂̄Y + ½[Y(Lξ)₊ − (ξL)₊Y + (YL)₊ξ − ξ(LY)₊] on the section window.
pub fn xi_anchor(agd: &Agd, xi: &XiField, y: &Section) -> Result<Section> {
    let (lo, _) = window(agd.n());
    let l = agd.oper().symbol();
    let (lx, xl) = plus_parts(agd, xi)?;
    let ys = y.symbol();
    let yl = ys.compose(&l, 0)?.plus_part();
    let ly = l.compose(ys, EXACT)?.plus_part();
    let x = xi.symbol();
    let a = ys.compose(&lx, lo)?;
    let b = xl.compose(ys, lo)?;
    let c = yl.compose(x, lo)?;
    let d = x.compose(&ly, lo)?;
    let half = &(&(&a - &b) + &c) - &d;
    let total = ys.d_zbar().checked_add(&half.scale(&(q(1) / q(2))))?;
    Ok(Section::project(agd.n(), &total.window(lo, -1)))
}

/// The ξ-dependent Hamiltonian of a section, in the pairing normalization of the printed fields.
/// Computes ∫Res(ξ δ_Y L) + ∫Res(Y ∂̄L) and ∫Res(Y F) and refuses to return if they differ.
pub fn hamiltonian(agd: &Agd, xi: &XiField, y: &Section) -> Result<Functional> {
    check(agd, xi)?;
    let l = agd.oper().symbol();
    let lifted = &agd.pair(xi.section(), &agd.anchor_operator(y)?)? + &agd.pair(y, &l.d_zbar())?;
    let direct = agd.pair(y, &constraint_operator(agd, xi)?)?;
    if !lifted.equals(&direct) {
        return Err(Error::Invalid(alloc::format!("Hamiltonian forms differ: {}", &lifted - &direct)));
    }
    Ok(Functional::new(&hamiltonian_scale(agd.oper().ring()) * &direct.density))
}

/// (A, A*) = (−(Lξ)₊, (ξL)₊).
pub fn dbar_deformation(agd: &Agd, xi: &XiField) -> Result<(PsiSymbol, PsiSymbol)> {
    let (lx, xl) = plus_parts(agd, xi)?;
    let n = agd.oper().order();
    for p in [&lx, &xl] {
        if let Some(d) = p.degree() {
            if d >= n {
                return Err(Error::DegreeViolation { degree: d, max: n - 1 });
            }
        }
    }
    Ok((-&lx, xl))
}

/// Outcome of the compatibility check for Lψ = 0, (∂̄ + B)ψ = 0.
#[derive(Clone, Debug)]
pub struct CompatReport {
    /// (∂̄L) − L∘B: the obstruction to ∂̄ + B preserving ker L.
    pub defect: PsiSymbol,
    /// Remainder of the defect modulo L before any substitution.
    pub off_shell: PsiSymbol,
    /// The same remainder after eliminating ∂̄W_j through the constraints.
    pub on_shell: PsiSymbol,
    /// Whether the off-shell remainder equals the constraint operator.
    pub off_shell_is_constraint: bool,
}

impl CompatReport {
    pub fn holds(&self) -> bool {
        self.on_shell.is_zero()
    }
}

/// Rules W_j[0,1] ↦ solutions of F = 0 for every moving oper coefficient.
pub fn on_shell_rules(agd: &Agd, xi: &XiField) -> Result<BTreeMap<JetKey, DiffPoly>> {
    let f = agd.oper().read_off(&constraint_operator(agd, xi)?)?;
    let ring = agd.oper().ring();
    let mut rules = BTreeMap::new();
    for (j, c) in f.iter().enumerate() {
        let w = agd.oper().w(j + 1);
        if w.is_zero() {
            if !c.is_zero() {
                return Err(Error::Invalid(alloc::format!("constraint moves the frozen W_{}", j + 1)));
            }
            continue;
        }
        let id = w.as_field().ok_or_else(|| Error::Invalid(alloc::format!("oper coefficient `{w}` is not a field")))?;
        let head = JetKey::new(id, 0, 1);
        let sign = c.partial(head);
        if sign != DiffPoly::one(ring) && sign != -&DiffPoly::one(ring) {
            return Err(Error::Invalid(alloc::format!("constraint for W_{} is not solved by its ∂̄-jet", j + 1)));
        }
        let rest = c - &(&DiffPoly::jet(ring, head) * &sign);
        rules.insert(head, -&(&rest * &sign));
    }
    Ok(rules)
}

/// The check for the deformation B = −(ξL)₊.
pub fn compatibility_check(agd: &Agd, xi: &XiField) -> Result<CompatReport> {
    let (_, a_star) = dbar_deformation(agd, xi)?;
    compatibility_with(agd, xi, &-&a_star)
}

/// The check for a given deformation B, on-shell with respect to the constraints of ξ.
pub fn compatibility_with(agd: &Agd, xi: &XiField, b: &PsiSymbol) -> Result<CompatReport> {
    check(agd, xi)?;
    if agd.oper().flavor() != Flavor::Sl {
        return Err(Error::Invalid("the compatibility check runs over SL opers".into()));
    }
    let l = agd.oper().symbol();
    let defect = &l.d_zbar() - &l.compose(b, EXACT)?;
    let (_, off_shell) = reduce_mod_oper(&defect, agd.oper())?;
    let rules = on_shell_rules(agd, xi)?;
    let (_, on_shell) = reduce_mod_oper(&defect.try_map_coeffs(|_, c| c.reduce_with(&rules))?, agd.oper())?;
    let off_shell_is_constraint = off_shell == constraint_operator(agd, xi)?;
    Ok(CompatReport { defect, off_shell, on_shell, off_shell_is_constraint })
}
