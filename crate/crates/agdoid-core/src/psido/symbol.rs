use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symjet::{fmt_rational, q, DiffPoly, Parity, Q, Ring};

/// Floor value of a symbol with no truncation.
pub const EXACT: i32 = i32::MIN;

/// Σ a_k ∂^k over a ring, trusted at degrees ≥ `floor`.
#[derive(Clone, PartialEq, Eq)]
pub struct PsiSymbol {
    ring: Ring,
    coeffs: BTreeMap<i32, DiffPoly>,
    floor: i32,
    pub weight_n: Option<u32>,
}

impl fmt::Debug for PsiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PsiSymbol({self}; floor {})", self.floor)
    }
}

/// Generalized binomial coefficient binom(n, m) for integer n.
pub fn binom(n: i32, m: u32) -> Q {
    let mut c = Q::one();
    for i in 0..m {
        c = c * q(n as i64 - i as i64) / q(i as i64 + 1);
    }
    c
}

impl PsiSymbol {
    pub fn zero(ring: &Ring) -> PsiSymbol {
        PsiSymbol { ring: ring.clone(), coeffs: BTreeMap::new(), floor: EXACT, weight_n: None }
    }

    /// An exact finite symbol.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (i32, DiffPoly)>) -> PsiSymbol {
        let mut s = PsiSymbol::zero(ring);
        for (k, a) in terms {
            s.add_at(k, &a);
        }
        s
    }

    pub fn monomial(ring: &Ring, degree: i32, coeff: DiffPoly) -> PsiSymbol {
        PsiSymbol::from_terms(ring, [(degree, coeff)])
    }

    /// ∂^degree with unit coefficient.
    pub fn del(ring: &Ring, degree: i32) -> PsiSymbol {
        PsiSymbol::monomial(ring, degree, DiffPoly::one(ring))
    }

    pub fn scalar(a: DiffPoly) -> PsiSymbol {
        let r = a.ring().clone();
        PsiSymbol::monomial(&r, 0, a)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == EXACT
    }

    pub fn coeff(&self, k: i32) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| DiffPoly::zero(&self.ring))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &DiffPoly)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lowest(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    fn add_at(&mut self, k: i32, a: &DiffPoly) {
        if a.is_zero() || k < self.floor {
            return;
        }
        let s = &self.coeff(k) + a;
        if s.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, s);
        }
    }

    /// Drops degrees below `floor` and records it; a floor below the current one is refused.
    pub fn truncate(&self, floor: i32) -> Result<PsiSymbol> {
        if floor < self.floor {
            return Err(Error::FloorTooLow { requested: floor, valid: self.floor });
        }
        let mut s = self.clone();
        s.floor = floor;
        s.coeffs = self.coeffs.iter().filter(|(k, _)| **k >= floor).map(|(k, v)| (*k, v.clone())).collect();
        Ok(s)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(i32, &DiffPoly) -> DiffPoly) -> PsiSymbol {
        let mut s = PsiSymbol { ring: self.ring.clone(), coeffs: BTreeMap::new(), floor: self.floor, weight_n: self.weight_n };
        for (k, a) in &self.coeffs {
            let b = f(*k, a);
            s.add_at(*k, &b);
        }
        s
    }

    pub fn try_map_coeffs(&self, mut f: impl FnMut(i32, &DiffPoly) -> Result<DiffPoly>) -> Result<PsiSymbol> {
        let mut s = PsiSymbol { ring: self.ring.clone(), coeffs: BTreeMap::new(), floor: self.floor, weight_n: self.weight_n };
        for (k, a) in &self.coeffs {
            let b = f(*k, a)?;
            s.add_at(*k, &b);
        }
        Ok(s)
    }

    pub fn scale(&self, c: &Q) -> PsiSymbol {
        self.map_coeffs(|_, a| a.scale(c))
    }

    /// Left multiplication of every coefficient by a function.
    pub fn left_mul(&self, f: &DiffPoly) -> PsiSymbol {
        self.map_coeffs(|_, a| f * a)
    }

    pub fn checked_add(&self, other: &PsiSymbol) -> Result<PsiSymbol> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let floor = self.floor.max(other.floor);
        let mut s = self.truncate(floor)?;
        for (k, a) in &other.coeffs {
            s.add_at(*k, a);
        }
        Ok(s)
    }

    pub fn plus_part(&self) -> PsiSymbol {
        let mut s = self.clone();
        s.coeffs.retain(|k, _| *k >= 0);
        if s.floor <= 0 {
            s.floor = EXACT;
        }
        s
    }

    pub fn minus_part(&self) -> PsiSymbol {
        let mut s = self.clone();
        s.coeffs.retain(|k, _| *k < 0);
        s
    }

    /// Degrees in `lo..=hi` only, keeping the floor.
    pub fn window(&self, lo: i32, hi: i32) -> PsiSymbol {
        let mut s = self.clone();
        s.coeffs.retain(|k, _| *k >= lo && *k <= hi);
        s
    }

    pub fn is_differential(&self) -> bool {
        self.coeffs.keys().all(|k| *k >= 0)
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut out: Option<Parity> = None;
        for a in self.coeffs.values() {
            let p = a.parity()?;
            match out {
                None => out = Some(p),
                Some(o) if o != p => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(Parity::Even))
    }

    /// Lowest degree at which a product with `other` is trustworthy.
    pub fn product_floor(&self, other: &PsiSymbol) -> i32 {
        let shift = |f: i32, d: Option<i32>| -> i32 {
            match (f, d) {
                (EXACT, _) | (_, None) => EXACT,
                (f, Some(d)) => f.saturating_add(d),
            }
        };
        shift(self.floor, other.degree()).max(shift(other.floor, self.degree()))
    }

    /// The symbol product, exact at degrees ≥ `floor`. Pass `EXACT` only when the left factor is
    /// differential and both factors are exact.
    pub fn compose(&self, other: &PsiSymbol, floor: i32) -> Result<PsiSymbol> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let valid = self.product_floor(other);
        if floor < valid {
            return Err(Error::FloorTooLow { requested: floor, valid });
        }
        if floor == EXACT && !self.is_differential() {
            return Err(Error::Invalid("an explicit floor is required for a pseudo-differential left factor".into()));
        }
        let mut out = PsiSymbol::zero(&self.ring);
        out.floor = floor;
        let mut derivs: BTreeMap<(i32, u32), DiffPoly> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut m = 0u32;
                loop {
                    let deg = i + j - m as i32;
                    if deg < floor || (*i >= 0 && m as i32 > *i) {
                        break;
                    }
                    let c = binom(*i, m);
                    if !c.is_zero() {
                        if !derivs.contains_key(&(*j, m)) {
                            let d = if m == 0 { b.clone() } else { derivs[&(*j, m - 1)].d_z() };
                            derivs.insert((*j, m), d);
                        }
                        let db = &derivs[&(*j, m)];
                        out.add_at(deg, &(a * db).scale(&c));
                    }
                    m += 1;
                }
            }
        }
        Ok(out)
    }

    /// X∘Y − (−1)^{|X||Y|} Y∘X.
    pub fn commutator(&self, other: &PsiSymbol, floor: i32) -> Result<PsiSymbol> {
        let xy = self.compose(other, floor)?;
        let yx = other.compose(self, floor)?;
        let odd = match (self.parity(), other.parity()) {
            (Some(a), Some(b)) => a.is_odd() && b.is_odd(),
            _ => return Err(Error::Invalid("commutator of inhomogeneous symbols".into())),
        };
        if odd {
            xy.checked_add(&yx)
        } else {
            xy.checked_add(&(-&yx))
        }
    }

    pub fn res(&self) -> Result<DiffPoly> {
        if self.floor > -1 {
            return Err(Error::UntrustedResidue);
        }
        Ok(self.coeff(-1))
    }

    pub fn kappa_shift(&self, p: i32) -> PsiSymbol {
        self.map_coeffs(|_, a| a.kappa_shift(p))
    }

    pub fn d_z(&self) -> PsiSymbol {
        self.map_coeffs(|_, a| a.d_z())
    }

    pub fn d_zbar(&self) -> PsiSymbol {
        self.map_coeffs(|_, a| a.d_zbar())
    }

    pub fn d_kappa(&self) -> PsiSymbol {
        self.map_coeffs(|_, a| a.d_kappa())
    }

    /// Agreement at every degree both operands trust.
    pub fn agrees_with(&self, other: &PsiSymbol) -> bool {
        let floor = self.floor.max(other.floor);
        let mut ks: Vec<i32> = self.coeffs.keys().chain(other.coeffs.keys()).copied().filter(|k| *k >= floor).collect();
        ks.dedup();
        ks.into_iter().all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl core::ops::Add for &PsiSymbol {
    type Output = PsiSymbol;
    fn add(self, rhs: &PsiSymbol) -> PsiSymbol {
        self.checked_add(rhs).expect("ring mismatch in PsiSymbol addition")
    }
}

impl core::ops::Sub for &PsiSymbol {
    type Output = PsiSymbol;
    fn sub(self, rhs: &PsiSymbol) -> PsiSymbol {
        self.checked_add(&-rhs).expect("ring mismatch in PsiSymbol subtraction")
    }
}

impl core::ops::Neg for &PsiSymbol {
    type Output = PsiSymbol;
    fn neg(self) -> PsiSymbol {
        self.map_coeffs(|_, a| -a)
    }
}

/// Descending degrees; a coefficient with several terms is parenthesized.
impl fmt::Display for PsiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().rev() {
            let single = a.len() == 1;
            if single {
                let (m, c) = a.terms().next().expect("one term");
                let neg = c.is_negative();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                let abs = c.abs();
                let bare = m.factors.is_empty() && m.kappa == 0;
                if bare {
                    if *k == 0 || !abs.is_one() {
                        fmt_rational(&abs, f)?;
                        if *k != 0 {
                            write!(f, "*")?;
                        }
                    }
                } else {
                    let p = DiffPoly::monomial(a.ring(), abs, m.clone());
                    write!(f, "{p}")?;
                    if *k != 0 {
                        write!(f, "*")?;
                    }
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({a})")?;
                if *k != 0 {
                    write!(f, "*")?;
                }
            }
            if *k == 1 {
                write!(f, "Del")?;
            } else if *k != 0 {
                write!(f, "Del^{k}")?;
            }
            first = false;
        }
        Ok(())
    }
}
