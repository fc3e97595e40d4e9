use alloc::vec::Vec;

use super::ghost::GhostPack;
use crate::agd::conformance::lookup;
use crate::error::{Error, Result};
use crate::symjet::{q, DiffPoly, FieldId, Functional, Monomial, Q};
use crate::wphase::{canonical_bracket, constraint, poisson_sign, CanonicalPair};

/// Ω = Σ∫η_j F^(j) + ½Σ∫⌊η,η⌋_j P_j over a ghost pack.
#[derive(Clone, Debug)]
pub struct BRSTCharge {
    pack: GhostPack,
    pairs: Vec<CanonicalPair>,
    pub omega: Functional,
    pub gh: i32,
    /// Σ η_j F^(j).
    pub linear: DiffPoly,
    /// The ghost-quadratic part, linear in the momenta.
    pub quadratic: DiffPoly,
}

impl BRSTCharge {
    pub fn pack(&self) -> &GhostPack {
        &self.pack
    }

    pub fn pairs(&self) -> &[CanonicalPair] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pack.n()
    }

    /// The same charge with the sign of the `index`-th density term flipped, index taken modulo the
    /// number of terms.
    pub fn corrupted(&self, index: usize) -> BRSTCharge {
        let len = self.omega.density.len().max(1);
        let target = index % len;
        let mut out = DiffPoly::zero(self.pack.ring());
        for (k, (m, c)) in self.omega.density.terms().enumerate() {
            let c = if k == target { -c.clone() } else { c.clone() };
            out = &out + &DiffPoly::monomial(self.pack.ring(), c, m.clone());
        }
        BRSTCharge { omega: Functional::new(out), ..self.clone() }
    }
}

/// The frozen coefficient of the ghost-quadratic term.
pub fn quadratic_coefficient() -> Q {
    let c = lookup("brst.quadratic").expect("quadratic coefficient is tabulated");
    if c.value.starts_with('-') {
        q(-1) / q(2)
    } else {
        q(1) / q(2)
    }
}

fn ghost_of(pack: &GhostPack, m: &Monomial) -> i32 {
    m.factors.iter().map(|(k, e)| pack.ring().symbol(k.field).ghost * (*e as i32)).sum()
}

fn momentum_degree(pack: &GhostPack, m: &Monomial) -> u32 {
    m.factors.iter().filter(|(k, _)| pack.momentum_ids().contains(&k.field)).map(|(_, e)| *e).sum()
}

fn check_ghost(pack: &GhostPack, p: &DiffPoly, expected: i32) -> Result<()> {
    for (m, _) in p.terms() {
        let g = ghost_of(pack, m);
        if g != expected {
            return Err(Error::GhostNumber { found: g, expected });
        }
    }
    Ok(())
}

pub fn build_omega(n: usize) -> Result<BRSTCharge> {
    build_omega_in(GhostPack::new(n)?)
}

pub fn build_omega_in(pack: GhostPack) -> Result<BRSTCharge> {
    let agd = pack.agd();
    let xi = pack.xi(&agd)?;
    let f = constraint(&agd, &xi)?;
    let n = pack.n();
    let mut linear = DiffPoly::zero(pack.ring());
    for j in 1..n {
        linear = &linear + &(&pack.eta(j) * f.get(j + 1));
    }
    let (x, y) = (pack.section(&agd, pack.scratch_a())?, pack.section(&agd, pack.scratch_b())?);
    let (b, _) = agd.lie_bracket(&x, &y)?;
    let mut quadratic = DiffPoly::zero(pack.ring());
    for (j, c) in pack.components(&b).iter().enumerate() {
        quadratic = &quadratic + &(&pack.ghost_substitute(c)? * &pack.momentum(j + 1));
    }
    from_parts(pack, linear, quadratic.scale(&quadratic_coefficient()))
}

/// Assembles a charge from its two parts; every monomial must carry ghost number one.
pub fn from_parts(pack: GhostPack, linear: DiffPoly, quadratic: DiffPoly) -> Result<BRSTCharge> {
    linear.same_ring(&pack.eta(1))?;
    quadratic.same_ring(&pack.eta(1))?;
    let density = &linear + &quadratic;
    check_ghost(&pack, &density, 1)?;
    let pairs = pack.pairs();
    Ok(BRSTCharge { pack, pairs, omega: Functional::new(density), gh: 1, linear, quadratic })
}

/// 2s∫[Σ_even E_qΩ E_pΩ − Σ_odd E_ηΩ E_PΩ], the symmetric bracket of an odd functional with
/// itself.
pub fn omega_square(charge: &BRSTCharge) -> Functional {
    let d = &charge.omega.density;
    let ring = charge.pack.ring();
    let mut total = DiffPoly::zero(ring);
    for c in &charge.pairs {
        let t = &d.euler(c.q) * &d.euler(c.p);
        total = if ring.parity(c.q).is_odd() { &total - &t } else { &total + &t };
    }
    Functional::new(total.scale(&(q(2) * poisson_sign())))
}

/// One cancellation block of {Ω,Ω}, graded by the number of ghost momenta.
#[derive(Clone, Debug)]
pub struct Block {
    pub name: &'static str,
    pub momentum_degree: u32,
    pub value: Functional,
    pub witnesses: Vec<(Option<FieldId>, DiffPoly)>,
}

#[derive(Clone, Debug)]
pub struct NilpotencyReport {
    pub n: usize,
    pub square: Functional,
    /// Whether the generic graded bracket gives the same functional.
    pub generic_agrees: bool,
    pub blocks: Vec<Block>,
}

impl NilpotencyReport {
    pub fn holds(&self) -> bool {
        self.generic_agrees && self.square.is_zero() && self.blocks.iter().all(|b| b.witnesses.is_empty())
    }
}

const BLOCKS: [&str; 3] = ["constraint algebra", "structure-function variation", "structure-structure"];

pub fn nilpotency_check(charge: &BRSTCharge) -> Result<NilpotencyReport> {
    let square = omega_square(charge);
    let generic = canonical_bracket(&charge.omega, &charge.omega, &charge.pairs)?;
    let generic_agrees = generic.equals(&square);
    let mut blocks = Vec::new();
    for (deg, name) in BLOCKS.iter().enumerate() {
        let part = square.density.filter(|m, _| momentum_degree(&charge.pack, m) == deg as u32);
        let value = Functional::new(part);
        let witnesses = value.witnesses();
        blocks.push(Block { name, momentum_degree: deg as u32, value, witnesses });
    }
    let rest = square.density.filter(|m, _| momentum_degree(&charge.pack, m) > 2);
    if !rest.is_zero() {
        return Err(Error::Invalid(alloc::format!("{{Omega, Omega}} has terms cubic in the momenta: {rest}")));
    }
    Ok(NilpotencyReport { n: charge.n(), square, generic_agrees, blocks })
}

/// Q f = {f, Ω}. The ghost number of a homogeneous f rises by one.
pub fn brst_action(charge: &BRSTCharge, f: &Functional) -> Result<Functional> {
    let out = canonical_bracket(f, &charge.omega, &charge.pairs)?;
    if let Some(g) = f.density.ghost_number() {
        check_ghost(&charge.pack, &out.density, g + 1)?;
    }
    Ok(out)
}
