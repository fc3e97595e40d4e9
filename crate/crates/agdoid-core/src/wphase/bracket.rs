use alloc::vec::Vec;

use crate::agd::conformance::lookup;
use crate::error::{Error, Result};
use crate::symjet::{q, DiffPoly, FieldId, Functional, Parity, Ring, Q};

/// A Darboux pair (coordinate, momentum) of equal parity.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPair {
    pub q: FieldId,
    pub p: FieldId,
}

/// Resolves (coordinate, momentum) names; unknown names and mixed parities are refused.
pub fn canonical_pairs(ring: &Ring, names: &[(&str, &str)]) -> Result<Vec<CanonicalPair>> {
    let mut out = Vec::new();
    for (a, b) in names {
        let (qf, pf) = (ring.field(a)?, ring.field(b)?);
        if ring.parity(qf) != ring.parity(pf) {
            return Err(Error::ParityMismatch(alloc::format!("{a}/{b}")));
        }
        if out.iter().any(|c: &CanonicalPair| [c.q, c.p].iter().any(|f| *f == qf || *f == pf)) || qf == pf {
            return Err(Error::DuplicateField(alloc::format!("{a}/{b}")));
        }
        out.push(CanonicalPair { q: qf, p: pf });
    }
    Ok(out)
}

/// The frozen overall sign of the bracket.
pub fn poisson_sign() -> Q {
    let c = lookup("poisson.sign").expect("poisson sign is tabulated");
    if c.value == "-1" {
        q(-1)
    } else {
        q(1)
    }
}

fn parity_of(f: &Functional) -> Result<Parity> {
    if f.density.is_zero() {
        return Ok(Parity::Even);
    }
    f.density.parity().ok_or_else(|| Error::ParityMismatch("functional of mixed parity".into()))
}

/// The ultralocal graded bracket
/// s·∫[Σ_even (E_q F E_p G − E_p F E_q G) + (−1)^{|F|} Σ_odd (E_η F E_P G + E_P F E_η G)],
/// with left Euler derivatives and s the frozen sign.
pub fn canonical_bracket(f: &Functional, g: &Functional, pairs: &[CanonicalPair]) -> Result<Functional> {
    f.density.same_ring(&g.density)?;
    let ring = f.density.ring().clone();
    let pf = parity_of(f)?;
    parity_of(g)?;
    let mut total = DiffPoly::zero(&ring);
    for c in pairs {
        let (fq, fp) = (f.density.euler(c.q), f.density.euler(c.p));
        let (gq, gp) = (g.density.euler(c.q), g.density.euler(c.p));
        let term = if ring.parity(c.q).is_odd() {
            let t = &(&fq * &gp) + &(&fp * &gq);
            if pf.is_odd() {
                -t
            } else {
                t
            }
        } else {
            &(&fq * &gp) - &(&fp * &gq)
        };
        total = &total + &term;
    }
    Ok(Functional::new(total.scale(&poisson_sign())))
}
