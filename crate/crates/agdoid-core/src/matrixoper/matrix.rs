use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::symjet::{DiffPoly, Ring};

/// A square matrix of differential polynomials. Indices are zero-based, row first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPoly {
    ring: Ring,
    n: usize,
    entries: Vec<DiffPoly>,
}

impl MatrixPoly {
    pub fn zero(ring: &Ring, n: usize) -> MatrixPoly {
        MatrixPoly { ring: ring.clone(), n, entries: alloc::vec![DiffPoly::zero(ring); n * n] }
    }

    pub fn identity(ring: &Ring, n: usize) -> MatrixPoly {
        let mut m = MatrixPoly::zero(ring, n);
        for i in 0..n {
            m.set(i, i, DiffPoly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<DiffPoly>>) -> Result<MatrixPoly> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Invalid(alloc::format!("matrix row of length {} in a {n}x{n} matrix", row.len())));
            }
            for e in row {
                e.same_ring(&DiffPoly::zero(ring))?;
                entries.push(e);
            }
        }
        Ok(MatrixPoly { ring: ring.clone(), n, entries })
    }

    pub fn from_fn(ring: &Ring, n: usize, mut f: impl FnMut(usize, usize) -> DiffPoly) -> MatrixPoly {
        let mut m = MatrixPoly::zero(ring, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &DiffPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: DiffPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn trace(&self) -> DiffPoly {
        let mut t = DiffPoly::zero(&self.ring);
        for i in 0..self.n {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Positions of the entries that are not syntactically zero.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn map(&self, mut f: impl FnMut(&DiffPoly) -> DiffPoly) -> MatrixPoly {
        MatrixPoly { ring: self.ring.clone(), n: self.n, entries: self.entries.iter().map(&mut f).collect() }
    }

    pub fn try_map(&self, mut f: impl FnMut(&DiffPoly) -> Result<DiffPoly>) -> Result<MatrixPoly> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(MatrixPoly { ring: self.ring.clone(), n: self.n, entries })
    }

    pub fn d_z(&self) -> MatrixPoly {
        self.map(|e| e.d_z())
    }

    pub fn d_zbar(&self) -> MatrixPoly {
        self.map(|e| e.d_zbar())
    }

    pub fn kappa_shift(&self, p: i32) -> MatrixPoly {
        self.map(|e| e.kappa_shift(p))
    }

    fn same_shape(&self, other: &MatrixPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.n != other.n {
            return Err(Error::Invalid(alloc::format!("matrix sizes {} and {} differ", self.n, other.n)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(MatrixPoly { ring: self.ring.clone(), n: self.n, entries })
    }

    pub fn checked_sub(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.same_shape(other)?;
        let n = self.n;
        let mut out = MatrixPoly::zero(&self.ring, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = DiffPoly::zero(&self.ring);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        s = &s + &(a * b);
                    }
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    /// self·other − other·self.
    pub fn commutator(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }
}

impl core::ops::Neg for &MatrixPoly {
    type Output = MatrixPoly;
    fn neg(self) -> MatrixPoly {
        self.map(|e| -e)
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
