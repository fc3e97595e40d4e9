use alloc::collections::BTreeMap;

use super::poly::DiffPoly;
use super::ring::{FieldId, JetKey, Ring};
use crate::error::{Error, Result};

/// An evolutionary derivation, fixed by its characteristic on undifferentiated fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evolutionary {
    ring: Ring,
    assign: BTreeMap<FieldId, DiffPoly>,
}

impl Evolutionary {
    pub fn new(ring: &Ring, assignments: BTreeMap<FieldId, DiffPoly>) -> Result<Evolutionary> {
        let mut assign = BTreeMap::new();
        for (f, v) in assignments {
            v.same_ring(&DiffPoly::zero(ring))?;
            if v.is_zero() {
                continue;
            }
            if v.parity() != Some(ring.parity(f)) {
                return Err(Error::ParityMismatch(ring.symbol(f).name.clone()));
            }
            assign.insert(f, v);
        }
        Ok(Evolutionary { ring: ring.clone(), assign })
    }

    pub fn by_name(ring: &Ring, assignments: &[(&str, DiffPoly)]) -> Result<Evolutionary> {
        let mut m = BTreeMap::new();
        for (name, v) in assignments {
            m.insert(ring.field(name)?, v.clone());
        }
        Evolutionary::new(ring, m)
    }

    pub fn zero(ring: &Ring) -> Evolutionary {
        Evolutionary { ring: ring.clone(), assign: BTreeMap::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn characteristic(&self, f: FieldId) -> DiffPoly {
        self.assign.get(&f).cloned().unwrap_or_else(|| DiffPoly::zero(&self.ring))
    }

    pub fn assignments(&self) -> &BTreeMap<FieldId, DiffPoly> {
        &self.assign
    }

    pub fn is_zero(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn apply(&self, p: &DiffPoly) -> Result<DiffPoly> {
        p.same_ring(&DiffPoly::zero(&self.ring))?;
        let mut prolonged: BTreeMap<JetKey, DiffPoly> = BTreeMap::new();
        Ok(p.apply_even_derivation(|k| match self.assign.get(&k.field) {
            None => DiffPoly::zero(&self.ring),
            Some(v) => prolonged
                .entry(k)
                .or_insert_with(|| v.d_z_n(k.dz as u32).d_zbar_n(k.dzbar as u32))
                .clone(),
        }))
    }

    /// The commutator `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &Evolutionary) -> Result<Evolutionary> {
        let mut m = BTreeMap::new();
        for f in self.assign.keys().chain(other.assign.keys()) {
            let v = &self.apply(&other.characteristic(*f))? - &other.apply(&self.characteristic(*f))?;
            m.insert(*f, v);
        }
        Evolutionary::new(&self.ring, m)
    }

    pub fn scale(&self, c: &super::poly::Q) -> Evolutionary {
        let assign = self
            .assign
            .iter()
            .map(|(f, v)| (*f, v.scale(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Evolutionary { ring: self.ring.clone(), assign }
    }

    pub fn add(&self, other: &Evolutionary) -> Result<Evolutionary> {
        let mut m = self.assign.clone();
        for (f, v) in &other.assign {
            let s = &self.characteristic(*f) + v;
            m.insert(*f, s);
        }
        Evolutionary::new(&self.ring, m)
    }
}
