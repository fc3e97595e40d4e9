//! The cotangent algebroid of a polynomial Poisson bivector on coordinates x1..xn.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symjet::{DiffPoly, FieldSymbol, JetKey, Ring};

#[cfg(test)]
mod tests;

/// The ring of coordinates x1..xn.
pub fn coordinates(n: usize) -> Result<Ring> {
    Ring::new((1..=n).map(|j| FieldSymbol::even(&format!("x{j}"))).collect())
}

fn dx(p: &DiffPoly, k: usize) -> DiffPoly {
    p.partial(JetKey::base(crate::symjet::FieldId(k as u16)))
}

fn check_commutative(p: &DiffPoly, n: usize) -> Result<()> {
    for k in p.jets() {
        if k.dz != 0 || k.dzbar != 0 || k.field.0 as usize >= n {
            return Err(Error::Invalid(format!("`{p}` is not a polynomial in the coordinates")));
        }
    }
    if p.kappa_range().is_some_and(|r| r != (0, 0)) {
        return Err(Error::Invalid(format!("`{p}` carries powers of k")));
    }
    Ok(())
}

/// π^{jk}, zero-based, antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBivector {
    ring: Ring,
    n: usize,
    entries: Vec<DiffPoly>,
}

impl PolyBivector {
    /// Sets π^{jk} from entries with j < k; the lower half follows by antisymmetry.
    pub fn from_upper(ring: &Ring, upper: &[(usize, usize, DiffPoly)]) -> Result<PolyBivector> {
        let n = ring.len();
        let mut entries = alloc::vec![DiffPoly::zero(ring); n * n];
        for (j, k, p) in upper {
            if j >= k || *k >= n {
                return Err(Error::Invalid(format!("entry ({j}, {k}) is not strictly upper in dimension {n}")));
            }
            p.same_ring(&entries[0])?;
            check_commutative(p, n)?;
            if !entries[j * n + k].is_zero() {
                return Err(Error::Invalid(format!("entry ({j}, {k}) given twice")));
            }
            entries[j * n + k] = p.clone();
            entries[k * n + j] = -p;
        }
        Ok(PolyBivector { ring: ring.clone(), n, entries })
    }

    /// A full matrix; refused unless antisymmetric.
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<DiffPoly>>) -> Result<PolyBivector> {
        let n = ring.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("bivector must be {n} x {n}")));
        }
        let entries: Vec<DiffPoly> = rows.into_iter().flatten().collect();
        for p in &entries {
            p.same_ring(&DiffPoly::zero(ring))?;
            check_commutative(p, n)?;
        }
        for j in 0..n {
            for k in 0..n {
                if !(&entries[j * n + k] + &entries[k * n + j]).is_zero() {
                    return Err(Error::Invalid(format!("bivector is not antisymmetric at ({j}, {k})")));
                }
            }
        }
        Ok(PolyBivector { ring: ring.clone(), n, entries })
    }

    /// The Lie-Poisson bivector π^{jk} = c^{jk}_l x_l of structure constants c[j][k][l].
    pub fn lie_poisson(ring: &Ring, c: &[Vec<Vec<i64>>]) -> Result<PolyBivector> {
        let n = ring.len();
        let x = |l: usize| DiffPoly::jet(ring, JetKey::base(crate::symjet::FieldId(l as u16)));
        let mut rows = Vec::new();
        for j in 0..n {
            let mut row = Vec::new();
            for k in 0..n {
                let mut p = DiffPoly::zero(ring);
                for l in 0..n {
                    let t = c.get(j).and_then(|r| r.get(k)).and_then(|r| r.get(l)).copied().unwrap_or(0);
                    p = &p + &x(l).scale_int(t);
                }
                row.push(p);
            }
            rows.push(row);
        }
        PolyBivector::from_rows(ring, rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, j: usize, k: usize) -> &DiffPoly {
        &self.entries[j * self.n + k]
    }
}

/// A one-form Σ ε_j dx^j with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentSection {
    pub components: Vec<DiffPoly>,
}

impl CotangentSection {
    pub fn new(components: Vec<DiffPoly>) -> CotangentSection {
        CotangentSection { components }
    }

    /// dx^j.
    pub fn basis(ring: &Ring, j: usize) -> CotangentSection {
        let mut c = alloc::vec![DiffPoly::zero(ring); ring.len()];
        c[j] = DiffPoly::one(ring);
        CotangentSection { components: c }
    }

    pub fn scale_by(&self, f: &DiffPoly) -> CotangentSection {
        CotangentSection { components: self.components.iter().map(|c| f * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// A vector field Σ V^k ∂_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub components: Vec<DiffPoly>,
}

impl VectorField {
    pub fn apply(&self, f: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero(f.ring());
        for (k, v) in self.components.iter().enumerate() {
            out = &out + &(v * &dx(f, k));
        }
        out
    }

    /// [V, U]^k = V(U^k) − U(V^k).
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        let components =
            self.components.iter().zip(&other.components).map(|(v, u)| &self.apply(u) - &other.apply(v)).collect();
        VectorField { components }
    }
}

fn check_section(pi: &PolyBivector, e: &CotangentSection) -> Result<()> {
    if e.components.len() != pi.n {
        return Err(Error::Invalid(format!("section has {} components, expected {}", e.components.len(), pi.n)));
    }
    for c in &e.components {
        c.same_ring(pi.get(0, 0))?;
        check_commutative(c, pi.n)?;
    }
    Ok(())
}

/// Jacobiator values ∂_iπ^{jk}π^{im} + c.p.(j,k,m), stored at j·n² + k·n + m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    pub n: usize,
    pub values: Vec<DiffPoly>,
}

impl JacobiDefect {
    pub fn get(&self, j: usize, k: usize, m: usize) -> &DiffPoly {
        &self.values[(j * self.n + k) * self.n + m]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// The first nonzero entry.
    pub fn witness(&self) -> Option<(usize, usize, usize, DiffPoly)> {
        let n = self.n;
        self.values.iter().enumerate().find(|(_, v)| !v.is_zero()).map(|(i, v)| (i / (n * n), (i / n) % n, i % n, v.clone()))
    }
}

pub fn jacobi_defect(pi: &PolyBivector) -> JacobiDefect {
    let n = pi.n;
    let term = |j: usize, k: usize, m: usize| {
        let mut s = DiffPoly::zero(&pi.ring);
        for i in 0..n {
            s = &s + &(&dx(pi.get(j, k), i) * pi.get(i, m));
        }
        s
    };
    let mut values = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                values.push(&(&term(j, k, m) + &term(k, m, j)) + &term(m, j, k));
            }
        }
    }
    JacobiDefect { n, values }
}

/// V_ε with V_ε x^k = ε_j π^{jk}.
pub fn anchor_fd(pi: &PolyBivector, e: &CotangentSection) -> Result<VectorField> {
    check_section(pi, e)?;
    let n = pi.n;
    let components = (0..n)
        .map(|k| (0..n).fold(DiffPoly::zero(&pi.ring), |acc, j| &acc + &(&e.components[j] * pi.get(j, k))))
        .collect();
    Ok(VectorField { components })
}

/// ⌊ε,ε′⌋_k = V_ε(ε′_k) − V_ε′(ε_k) + ε_j ∂_k(π^{ji}) ε′_i.
pub fn bracket_fd(pi: &PolyBivector, e: &CotangentSection, f: &CotangentSection) -> Result<CotangentSection> {
    let (ve, vf) = (anchor_fd(pi, e)?, anchor_fd(pi, f)?);
    let n = pi.n;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = &ve.apply(&f.components[k]) - &vf.apply(&e.components[k]);
        for j in 0..n {
            for i in 0..n {
                c = &c + &(&(&e.components[j] * &dx(pi.get(j, i), k)) * &f.components[i]);
            }
        }
        out.push(c);
    }
    Ok(CotangentSection { components: out })
}

/// Deterministic sections with random integer coefficients on monomials of degree ≤ `degree`.
pub fn random_sections(ring: &Ring, count: usize, degree: u32, seed: u64) -> Vec<CotangentSection> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.len();
    let mut monomials = alloc::vec![DiffPoly::one(ring)];
    let mut frontier = monomials.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            for l in 0..n {
                let p = m * &DiffPoly::jet(ring, JetKey::base(crate::symjet::FieldId(l as u16)));
                if !monomials.contains(&p) && !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        monomials.extend(next.iter().cloned());
        frontier = next;
    }
    (0..count)
        .map(|_| {
            let components = (0..n)
                .map(|_| {
                    monomials.iter().fold(DiffPoly::zero(ring), |acc, m| {
                        let c: i64 = rng.gen_range(-2..=2);
                        &acc + &m.scale_int(c)
                    })
                })
                .collect();
            CotangentSection { components }
        })
        .collect()
}

/// One axiom with the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub holds: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidReport {
    pub axioms: Vec<AxiomResult>,
}

impl AlgebroidReport {
    pub fn holds(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }
}

fn first_nonzero(parts: &[DiffPoly]) -> Option<(usize, &DiffPoly)> {
    parts.iter().enumerate().find(|(_, p)| !p.is_zero())
}

/// Nonzero entries (j, k, m, n) of f^{jk}_i f^{im}_n + σ·δ_{e^m} f^{jk}_n + c.p.(j,k,m), with
/// f^{jk}_i = ∂_iπ^{jk} the structure functions of ⌊dx^j, dx^k⌋ and σ the sign of the variation
/// term.
pub fn structure_jacobi(pi: &PolyBivector, sigma: i64) -> Vec<(usize, usize, usize, usize, DiffPoly)> {
    let n = pi.n;
    let f = |j: usize, k: usize, i: usize| dx(pi.get(j, k), i);
    let delta = |m: usize, p: &DiffPoly| (0..n).fold(DiffPoly::zero(&pi.ring), |acc, l| &acc + &(pi.get(m, l) * &dx(p, l)));
    let term = |j: usize, k: usize, m: usize, o: usize| {
        let mut s = DiffPoly::zero(&pi.ring);
        for i in 0..n {
            s = &s + &(&f(j, k, i) * &f(i, m, o));
        }
        &s + &delta(m, &f(j, k, o)).scale_int(sigma)
    };
    let mut out = Vec::new();
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                for o in 0..n {
                    let v = &(&term(j, k, m, o) + &term(k, m, j, o)) + &term(m, j, k, o);
                    if !v.is_zero() {
                        out.push((j, k, m, o, v));
                    }
                }
            }
        }
    }
    out
}

/// The sign σ of the variation term under which the structure functions of a Poisson bivector
/// satisfy the Jacobi identity, given the Leibniz rule ⌊ε, fε′⌋ = f⌊ε,ε′⌋ + (V_ε f)ε′.
pub const STRUCTURE_VARIATION_SIGN: i64 = -1;

/// Antisymmetry, the anchor homomorphism [V_ε, V_ε′] = V_⌊ε,ε′⌋, the Leibniz rule on the probe
/// sections and functions, and the structure-function Jacobi identity. The last also reports a
/// nonzero Jacobiator of π.
pub fn verify_algebroid_fd(pi: &PolyBivector, probes: &[CotangentSection], functions: &[DiffPoly]) -> Result<AlgebroidReport> {
    let mut anti = None;
    let mut hom = None;
    let mut leib = None;
    for (a, e) in probes.iter().enumerate() {
        for (b, f) in probes.iter().enumerate() {
            let ef = bracket_fd(pi, e, f)?;
            if anti.is_none() {
                let fe = bracket_fd(pi, f, e)?;
                let sum: Vec<DiffPoly> = ef.components.iter().zip(&fe.components).map(|(x, y)| x + y).collect();
                if let Some((k, v)) = first_nonzero(&sum) {
                    anti = Some(format!("probes ({a}, {b}), component {k}: {v}"));
                }
            }
            if hom.is_none() {
                let lhs = anchor_fd(pi, e)?.commutator(&anchor_fd(pi, f)?);
                let rhs = anchor_fd(pi, &ef)?;
                let diff: Vec<DiffPoly> = lhs.components.iter().zip(&rhs.components).map(|(x, y)| x - y).collect();
                if let Some((k, v)) = first_nonzero(&diff) {
                    hom = Some(format!("probes ({a}, {b}), component {k}: {v}"));
                }
            }
            for (c, g) in functions.iter().enumerate() {
                if leib.is_some() {
                    break;
                }
                check_commutative(g, pi.n)?;
                let lhs = bracket_fd(pi, e, &f.scale_by(g))?;
                let vg = anchor_fd(pi, e)?.apply(g);
                let diff: Vec<DiffPoly> = (0..pi.n)
                    .map(|k| &(&lhs.components[k] - &(g * &ef.components[k])) - &(&vg * &f.components[k]))
                    .collect();
                if let Some((k, v)) = first_nonzero(&diff) {
                    leib = Some(format!("probes ({a}, {b}), function {c}, component {k}: {v}"));
                }
            }
        }
    }
    let jac = match jacobi_defect(pi).witness() {
        Some((j, k, m, v)) => Some(format!("bivector Jacobiator at ({j}, {k}, {m}): {v}")),
        None => structure_jacobi(pi, STRUCTURE_VARIATION_SIGN)
            .first()
            .map(|(j, k, m, o, v)| format!("indices ({j}, {k}, {m}) component {o}: {v}")),
    };
    let axiom = |name, c: Option<String>| AxiomResult { name, holds: c.is_none(), counterexample: c };
    Ok(AlgebroidReport {
        axioms: alloc::vec![
            axiom("antisymmetry", anti),
            axiom("anchor homomorphism", hom),
            axiom("Leibniz rule", leib),
            axiom("structure-function Jacobi", jac),
        ],
    })
}
