use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    pub fn from_odd(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        Parity::from_odd(self.is_odd() ^ other.is_odd())
    }
}

/// A named generator of the jet ring. Weight and ghost number are metadata only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSymbol {
    pub name: String,
    pub parity: Parity,
    pub weight: Option<i32>,
    pub ghost: i32,
}

impl FieldSymbol {
    pub fn even(name: &str) -> FieldSymbol {
        FieldSymbol { name: name.to_string(), parity: Parity::Even, weight: None, ghost: 0 }
    }

    pub fn odd(name: &str) -> FieldSymbol {
        FieldSymbol { name: name.to_string(), parity: Parity::Odd, weight: None, ghost: 0 }
    }

    pub fn weight(mut self, w: i32) -> FieldSymbol {
        self.weight = Some(w);
        self
    }

    pub fn ghost(mut self, g: i32) -> FieldSymbol {
        self.ghost = g;
        self
    }
}

/// Index of a field inside its ring; the declaration order is the monomial order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(pub u16);

/// The jet coordinate `field[dz, dzbar]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetKey {
    pub field: FieldId,
    pub dz: u16,
    pub dzbar: u16,
}

impl JetKey {
    pub fn new(field: FieldId, dz: u16, dzbar: u16) -> JetKey {
        JetKey { field, dz, dzbar }
    }

    pub fn base(field: FieldId) -> JetKey {
        JetKey { field, dz: 0, dzbar: 0 }
    }

    pub fn shift(self, dz: u16, dzbar: u16) -> JetKey {
        JetKey { field: self.field, dz: self.dz + dz, dzbar: self.dzbar + dzbar }
    }
}

#[derive(Debug)]
struct RingData {
    fields: Vec<FieldSymbol>,
}

/// An immutable, shareable ring context.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(fields: Vec<FieldSymbol>) -> Result<Ring> {
        for (i, f) in fields.iter().enumerate() {
            if f.name == "k" || f.name == "Del" || f.name.is_empty() {
                return Err(Error::Invalid(alloc::format!("reserved field name `{}`", f.name)));
            }
            if fields[..i].iter().any(|g| g.name == f.name) {
                return Err(Error::DuplicateField(f.name.clone()));
            }
        }
        if fields.len() > u16::MAX as usize {
            return Err(Error::Invalid("too many fields".to_string()));
        }
        Ok(Ring(Arc::new(RingData { fields })))
    }

    pub fn len(&self) -> usize {
        self.0.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.fields.is_empty()
    }

    pub fn field(&self, name: &str) -> Result<FieldId> {
        self.0
            .fields
            .iter()
            .position(|f| f.name == name)
            .map(|i| FieldId(i as u16))
            .ok_or_else(|| Error::UnknownField(name.to_string()))
    }

    pub fn symbol(&self, id: FieldId) -> &FieldSymbol {
        &self.0.fields[id.0 as usize]
    }

    pub fn parity(&self, id: FieldId) -> Parity {
        self.symbol(id).parity
    }

    pub fn ids(&self) -> impl Iterator<Item = FieldId> + '_ {
        (0..self.0.fields.len()).map(|i| FieldId(i as u16))
    }

    pub fn symbols(&self) -> &[FieldSymbol] {
        &self.0.fields
    }

    pub fn fmt_jet(&self, k: JetKey, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.symbol(k.field).name;
        if k.dz == 0 && k.dzbar == 0 {
            write!(f, "{name}")
        } else {
            write!(f, "{name}[{},{}]", k.dz, k.dzbar)
        }
    }
}
