use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::poly::{DiffPoly, Monomial, Q};
use super::ring::FieldId;

/// A density taken modulo Im d_z + Im d_zbar.
#[derive(Clone, Debug)]
pub struct Functional {
    pub density: DiffPoly,
}

impl Functional {
    pub fn new(density: DiffPoly) -> Functional {
        Functional { density }
    }

    /// Nonzero Euler derivatives of the density; a nonzero constant term is reported under `None`.
    pub fn witnesses(&self) -> Vec<(Option<FieldId>, DiffPoly)> {
        let mut out = Vec::new();
        let c = self.density.constant_term();
        if !c.is_zero() {
            out.push((None, c));
        }
        for f in self.density.fields() {
            let e = self.density.euler(f);
            if !e.is_zero() {
                out.push((Some(f), e));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        !self.density.has_constant_term() && self.density.fields().into_iter().all(|f| self.density.euler(f).is_zero())
    }

    pub fn equals(&self, other: &Functional) -> bool {
        self.density.same_ring(&other.density).is_ok() && (self - other).is_zero()
    }

    pub fn scale(&self, c: &Q) -> Functional {
        Functional::new(self.density.scale(c))
    }

    /// Euler derivatives and constant term, flattened to coordinates (slot, monomial).
    fn coordinates(&self) -> BTreeMap<(Option<FieldId>, Monomial), Q> {
        let mut out = BTreeMap::new();
        for (f, p) in self.witnesses() {
            for (m, c) in p.terms() {
                out.insert((f, m.clone()), c.clone());
            }
        }
        out
    }

    /// Rational λ with target_e = Σ_i λ_i basis_e[i] as Functionals for every equation e, all
    /// equations sharing the same unknowns. `None` when the system is inconsistent.
    pub fn solve_linear(system: &[(Functional, Vec<Functional>)]) -> Option<Vec<Q>> {
        let unknowns = system.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (target, basis) in system {
            let cols: Vec<_> = basis.iter().map(Functional::coordinates).collect();
            let rhs = target.coordinates();
            let mut keys: Vec<_> = rhs.keys().cloned().collect();
            for c in &cols {
                keys.extend(c.keys().cloned());
            }
            keys.sort();
            keys.dedup();
            for key in keys {
                let mut row = vec![Q::zero(); unknowns + 1];
                for (i, c) in cols.iter().enumerate() {
                    if let Some(x) = c.get(&key) {
                        row[i] = x.clone();
                    }
                }
                row[unknowns] = rhs.get(&key).cloned().unwrap_or_else(Q::zero);
                rows.push(row);
            }
        }
        solve_rows(rows, unknowns)
    }
}

/// Gauss-Jordan elimination on an augmented matrix; free unknowns are set to zero.
fn solve_rows(mut rows: Vec<Vec<Q>>, unknowns: usize) -> Option<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::from_integer(1.into()) / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (dst, src) in row.iter_mut().zip(&pivot) {
                    *dst = &*dst - &(&f * src);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![Q::zero(); unknowns];
    for (i, col) in pivots.into_iter().enumerate() {
        sol[col] = rows[i][unknowns].clone();
    }
    Some(sol)
}

impl core::ops::Sub for &Functional {
    type Output = Functional;
    fn sub(self, rhs: &Functional) -> Functional {
        Functional::new(&self.density - &rhs.density)
    }
}

impl core::ops::Add for &Functional {
    type Output = Functional;
    fn add(self, rhs: &Functional) -> Functional {
        Functional::new(&self.density + &rhs.density)
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "int({})", self.density)
    }
}
