use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{FieldId, JetKey, Parity, Ring};
use crate::error::{Error, Result};

pub type Q = BigRational;

/// Coefficient, κ power and jet factors with exponents, in multiplication order.
pub type Product = (Q, i32, Vec<(JetKey, u32)>);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A power of κ times an ordered product of jet coordinates. Odd jets occur with exponent 1 and
/// the stored order is the canonical one, so the sign of a monomial lives in its coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub kappa: i32,
    pub factors: Vec<(JetKey, u32)>,
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial { kappa: 0, factors: Vec::new() }
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree_in(&self, field: FieldId) -> u32 {
        self.factors.iter().filter(|(k, _)| k.field == field).map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, key: JetKey) -> u32 {
        self.factors.iter().find(|(k, _)| *k == key).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn parity(&self, ring: &Ring) -> Parity {
        let odd = self.factors.iter().filter(|(k, _)| ring.parity(k.field).is_odd()).count();
        Parity::from_odd(odd % 2 == 1)
    }
}

/// Brings a product of factors, listed in multiplication order, to canonical order. Returns the
/// Koszul sign (true for negative) or `None` when an odd factor repeats.
pub(crate) fn canonicalize(ring: &Ring, seq: &[(JetKey, u32)]) -> Option<(bool, Vec<(JetKey, u32)>)> {
    let mut odd: Vec<JetKey> = Vec::new();
    let mut acc: BTreeMap<JetKey, u32> = BTreeMap::new();
    for &(k, e) in seq {
        if e == 0 {
            continue;
        }
        if ring.parity(k.field).is_odd() {
            if e > 1 {
                return None;
            }
            odd.push(k);
        }
        *acc.entry(k).or_insert(0) += e;
    }
    let mut inversions = 0usize;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            match odd[i].cmp(&odd[j]) {
                core::cmp::Ordering::Greater => inversions += 1,
                core::cmp::Ordering::Equal => return None,
                core::cmp::Ordering::Less => {}
            }
        }
    }
    Some((inversions % 2 == 1, acc.into_iter().collect()))
}

fn mono_mul(ring: &Ring, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let mut sign = false;
    for (kb, _) in b.factors.iter().filter(|(k, _)| ring.parity(k.field).is_odd()) {
        for (ka, _) in a.factors.iter().filter(|(k, _)| ring.parity(k.field).is_odd()) {
            match ka.cmp(kb) {
                core::cmp::Ordering::Greater => sign = !sign,
                core::cmp::Ordering::Equal => return None,
                core::cmp::Ordering::Less => {}
            }
        }
    }
    let mut factors = Vec::with_capacity(a.factors.len() + b.factors.len());
    let (mut i, mut j) = (0, 0);
    while i < a.factors.len() || j < b.factors.len() {
        if j == b.factors.len() || (i < a.factors.len() && a.factors[i].0 < b.factors[j].0) {
            factors.push(a.factors[i]);
            i += 1;
        } else if i == a.factors.len() || b.factors[j].0 < a.factors[i].0 {
            factors.push(b.factors[j]);
            j += 1;
        } else {
            factors.push((a.factors[i].0, a.factors[i].1 + b.factors[j].1));
            i += 1;
            j += 1;
        }
    }
    Some((sign, Monomial { kappa: a.kappa + b.kappa, factors }))
}

/// An exact differential polynomial with Laurent dependence on κ.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

impl DiffPoly {
    pub fn zero(ring: &Ring) -> DiffPoly {
        DiffPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Q) -> DiffPoly {
        let mut p = DiffPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(), c);
        }
        p
    }

    pub fn int(ring: &Ring, n: i64) -> DiffPoly {
        DiffPoly::constant(ring, q(n))
    }

    pub fn one(ring: &Ring) -> DiffPoly {
        DiffPoly::int(ring, 1)
    }

    pub fn kappa(ring: &Ring, power: i32) -> DiffPoly {
        DiffPoly::monomial(ring, q(1), Monomial { kappa: power, factors: Vec::new() })
    }

    pub fn jet(ring: &Ring, key: JetKey) -> DiffPoly {
        DiffPoly::monomial(ring, q(1), Monomial { kappa: 0, factors: alloc::vec![(key, 1)] })
    }

    /// The jet `name[dz, dzbar]`.
    pub fn var(ring: &Ring, name: &str, dz: u16, dzbar: u16) -> Result<DiffPoly> {
        Ok(DiffPoly::jet(ring, JetKey::new(ring.field(name)?, dz, dzbar)))
    }

    pub fn monomial(ring: &Ring, c: Q, m: Monomial) -> DiffPoly {
        let mut p = DiffPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from factor sequences in multiplication order.
    pub fn from_products(ring: &Ring, items: &[Product]) -> DiffPoly {
        let mut p = DiffPoly::zero(ring);
        for (c, kappa, seq) in items {
            if let Some((neg, factors)) = canonicalize(ring, seq) {
                let c = if neg { -c.clone() } else { c.clone() };
                p.add_term(Monomial { kappa: *kappa, factors }, c);
            }
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn same_ring(&self, other: &DiffPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.same_ring(other)?;
        let mut out = DiffPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = mono_mul(&self.ring, ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(&self.ring);
        }
        DiffPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> DiffPoly {
        self.scale(&q(n))
    }

    /// Multiplies by κ^power.
    pub fn kappa_shift(&self, power: i32) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial { kappa: m.kappa + power, factors: m.factors.clone() }, v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut out = DiffPoly::one(&self.ring);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `Some(parity)` when every monomial has the same parity; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.ring));
        let first = match it.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn part(&self, parity: Parity) -> DiffPoly {
        self.filter(|m, _| m.parity(&self.ring) == parity)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial, &Q) -> bool) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, c)| keep(m, c)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn constant_term(&self) -> DiffPoly {
        self.filter(|m, _| m.is_constant())
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(|m| m.is_constant())
    }

    /// Jet coordinates that occur, in canonical order.
    pub fn jets(&self) -> Vec<JetKey> {
        let mut ks: Vec<JetKey> = self.terms.keys().flat_map(|m| m.factors.iter().map(|(k, _)| *k)).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// The field, when the polynomial is exactly one undifferentiated field with coefficient 1.
    pub fn as_field(&self) -> Option<FieldId> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if c.is_one() && m.kappa == 0 && m.factors.len() == 1 => {
                let (k, e) = m.factors[0];
                (e == 1 && k.dz == 0 && k.dzbar == 0).then_some(k.field)
            }
            _ => None,
        }
    }

    pub fn fields(&self) -> Vec<FieldId> {
        let mut fs: Vec<FieldId> = self.jets().into_iter().map(|k| k.field).collect();
        fs.dedup();
        fs
    }

    pub fn kappa_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|m| m.kappa).min()?;
        let hi = self.terms.keys().map(|m| m.kappa).max()?;
        Some((lo, hi))
    }

    /// The part with κ exponent exactly `power`.
    pub fn kappa_part(&self, power: i32) -> DiffPoly {
        self.filter(|m, _| m.kappa == power)
    }

    /// Syntactic ∂/∂κ.
    pub fn d_kappa(&self) -> DiffPoly {
        let mut out = DiffPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.kappa != 0 {
                out.add_term(Monomial { kappa: m.kappa - 1, factors: m.factors.clone() }, c * q(m.kappa as i64));
            }
        }
        out
    }

    /// Total ghost number of every monomial, if uniform.
    pub fn ghost_number(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| {
            m.factors.iter().map(|(k, e)| self.ring.symbol(k.field).ghost * (*e as i32)).sum::<i32>()
        });
        let first = it.next()?;
        if it.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Moves the polynomial into another ring that declares every field used here.
    pub fn transport(&self, target: &Ring) -> Result<DiffPoly> {
        let mut map = BTreeMap::new();
        for f in self.fields() {
            let sym = self.ring.symbol(f);
            let t = target.field(&sym.name)?;
            if target.parity(t) != sym.parity {
                return Err(Error::ParityMismatch(sym.name.clone()));
            }
            map.insert(f, t);
        }
        let mut out = DiffPoly::zero(target);
        for (m, c) in &self.terms {
            let seq: Vec<(JetKey, u32)> =
                m.factors.iter().map(|(k, e)| (JetKey::new(map[&k.field], k.dz, k.dzbar), *e)).collect();
            if let Some((neg, factors)) = canonicalize(target, &seq) {
                out.add_term(Monomial { kappa: m.kappa, factors }, if neg { -c.clone() } else { c.clone() });
            }
        }
        Ok(out)
    }
}

impl<'a> Add<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        self.checked_add(rhs).expect("ring mismatch in DiffPoly addition")
    }
}

impl<'a> Sub<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self.checked_add(&-rhs).expect("ring mismatch in DiffPoly subtraction")
    }
}

impl<'a> Mul<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        self.checked_mul(rhs).expect("ring mismatch in DiffPoly multiplication")
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: DiffPoly) -> DiffPoly {
        &self + &rhs
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: DiffPoly) -> DiffPoly {
        &self - &rhs
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

pub fn fmt_rational(c: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial_body(ring: &Ring, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    if m.kappa != 0 {
        if m.kappa == 1 {
            write!(f, "k")?;
        } else {
            write!(f, "k^{}", m.kappa)?;
        }
        first = false;
    }
    for (k, e) in &m.factors {
        if !first {
            write!(f, "*")?;
        }
        ring.fmt_jet(*k, f)?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
        first = false;
    }
    Ok(())
}

/// Canonical text: terms in monomial order joined by ` + ` or ` - `.
impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_constant() && m.kappa == 0 {
                fmt_rational(&a, f)?;
                continue;
            }
            if !a.is_one() {
                fmt_rational(&a, f)?;
                write!(f, "*")?;
            }
            fmt_monomial_body(&self.ring, m, f)?;
        }
        Ok(())
    }
}
