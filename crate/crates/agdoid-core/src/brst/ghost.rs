use alloc::format;
use alloc::vec::Vec;

use crate::agd::{embed_n2, embed_n3, unembed_n2, unembed_n3, Agd, Section};
use crate::error::{Error, Result};
use crate::psido::Oper;
use crate::symjet::{DiffPoly, FieldId, FieldSymbol, Ring};
use crate::wphase::{canonical_pairs, CanonicalPair, XiField};

/// Base fields, ghosts η_j and momenta P_j for one order N. The ring also carries even scratch
/// fields a_j, b_j used to polarize the section bracket, and optional even spectators.
#[derive(Clone, Debug)]
pub struct GhostPack {
    n: usize,
    ring: Ring,
    eta: Vec<FieldId>,
    momenta: Vec<FieldId>,
    scratch_a: Vec<FieldId>,
    scratch_b: Vec<FieldId>,
}

impl GhostPack {
    pub fn new(n: usize) -> Result<GhostPack> {
        GhostPack::with_spectators(n, &[])
    }

    /// Adds even fields of ghost number zero that no bracket pairs; handy for test functionals.
    pub fn with_spectators(n: usize, spectators: &[&str]) -> Result<GhostPack> {
        if !(2..=3).contains(&n) {
            return Err(Error::Invalid(format!("BRST charge is built for N = 2, 3, not {n}")));
        }
        let mut fields = Vec::new();
        fields.push(FieldSymbol::even("T").weight(2));
        if n == 3 {
            fields.push(FieldSymbol::even("W").weight(3));
        }
        fields.push(FieldSymbol::even("mu").weight(-1));
        if n == 3 {
            fields.push(FieldSymbol::even("rho").weight(-2));
        }
        for s in spectators {
            fields.push(FieldSymbol::even(s));
        }
        for j in 1..n {
            fields.push(FieldSymbol::even(&format!("a{j}")).weight(-(j as i32)));
        }
        for j in 1..n {
            fields.push(FieldSymbol::even(&format!("b{j}")).weight(-(j as i32)));
        }
        for j in 1..n {
            fields.push(FieldSymbol::odd(&format!("eta{j}")).weight(-(j as i32)).ghost(1));
        }
        for j in 1..n {
            fields.push(FieldSymbol::odd(&format!("P{j}")).weight(j as i32 + 1).ghost(-1));
        }
        let ring = Ring::new(fields)?;
        let ids = |p: &str| (1..n).map(|j| ring.field(&format!("{p}{j}"))).collect::<Result<Vec<_>>>();
        let (eta, momenta, scratch_a, scratch_b) = (ids("eta")?, ids("P")?, ids("a")?, ids("b")?);
        Ok(GhostPack { n, ring, eta, momenta, scratch_a, scratch_b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn var(&self, f: FieldId) -> DiffPoly {
        DiffPoly::var(&self.ring, &self.ring.symbol(f).name, 0, 0).expect("field of the pack")
    }

    fn named(&self, name: &str) -> DiffPoly {
        DiffPoly::var(&self.ring, name, 0, 0).expect("field of the pack")
    }

    /// η_j, j = 1..N−1.
    pub fn eta(&self, j: usize) -> DiffPoly {
        self.var(self.eta[j - 1])
    }

    /// P_j, j = 1..N−1.
    pub fn momentum(&self, j: usize) -> DiffPoly {
        self.var(self.momenta[j - 1])
    }

    pub fn eta_ids(&self) -> &[FieldId] {
        &self.eta
    }

    pub fn momentum_ids(&self) -> &[FieldId] {
        &self.momenta
    }

    pub fn scratch_a(&self) -> &[FieldId] {
        &self.scratch_a
    }

    pub fn scratch_b(&self) -> &[FieldId] {
        &self.scratch_b
    }

    /// (T, μ), (W, ρ) and (η_j, P_j).
    pub fn pairs(&self) -> Vec<CanonicalPair> {
        let mut names = alloc::vec![(alloc::string::String::from("T"), alloc::string::String::from("mu"))];
        if self.n == 3 {
            names.push(("W".into(), "rho".into()));
        }
        for j in 1..self.n {
            names.push((format!("eta{j}"), format!("P{j}")));
        }
        let refs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        canonical_pairs(&self.ring, &refs).expect("pack fields pair canonically")
    }

    pub fn agd(&self) -> Agd {
        let t = self.named("T");
        if self.n == 2 {
            Agd::new(Oper::sl2(&t))
        } else {
            Agd::new(Oper::sl3(&t, &self.named("W")))
        }
    }

    pub fn xi(&self, agd: &Agd) -> Result<XiField> {
        if self.n == 2 {
            XiField::n2(agd, &self.named("mu"))
        } else {
            XiField::n3(agd, &self.named("mu"), &self.named("rho"))
        }
    }

    /// The section with components given by the listed fields, in the printed normalization.
    pub fn section(&self, agd: &Agd, ids: &[FieldId]) -> Result<Section> {
        let e: Vec<DiffPoly> = ids.iter().map(|f| self.var(*f)).collect();
        if self.n == 2 {
            embed_n2(agd, &e[0])
        } else {
            embed_n3(agd, &e[0], &e[1])
        }
    }

    /// Printed components ε_j of a section, index j−1.
    pub fn components(&self, s: &Section) -> Vec<DiffPoly> {
        if self.n == 2 {
            alloc::vec![unembed_n2(s)]
        } else {
            let (e1, e2) = unembed_n3(s);
            alloc::vec![e1, e2]
        }
    }

    /// Replaces a_j and b_j by η_j. Factors keep their order in each monomial, so with the a-fields
    /// declared before the b-fields an a-jet lands left of a b-jet.
    pub fn ghost_substitute(&self, p: &DiffPoly) -> Result<DiffPoly> {
        p.same_ring(&self.eta(1))?;
        let target = |f: FieldId| -> FieldId {
            if let Some(j) = self.scratch_a.iter().position(|x| *x == f) {
                self.eta[j]
            } else if let Some(j) = self.scratch_b.iter().position(|x| *x == f) {
                self.eta[j]
            } else {
                f
            }
        };
        let items: Vec<_> = p
            .terms()
            .map(|(m, c)| {
                let seq = m.factors.iter().map(|(k, e)| (crate::symjet::JetKey::new(target(k.field), k.dz, k.dzbar), *e)).collect();
                (c.clone(), m.kappa, seq)
            })
            .collect();
        Ok(DiffPoly::from_products(&self.ring, &items))
    }
}
