use alloc::vec::Vec;

use super::symbol::{PsiSymbol, EXACT};
use crate::error::{Error, Result};
use crate::symjet::{q, DiffPoly, Functional, Ring};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    Gl,
    Sl,
}

/// How the stored W_j enter the operator: `Plus` gives κ^N∂^N + Σ W_j κ^{N−j}∂^{N−j}, `Minus`
/// subtracts them, as in κ³∂³ − Tκ∂ − W.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Convention {
    Plus,
    Minus,
}

impl Convention {
    pub fn sign(self) -> i64 {
        match self {
            Convention::Plus => 1,
            Convention::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oper {
    n: usize,
    flavor: Flavor,
    convention: Convention,
    w: Vec<DiffPoly>,
}

impl Oper {
    /// `w[j-1]` is W_j for j = 1..=N.
    pub fn new(flavor: Flavor, convention: Convention, w: Vec<DiffPoly>) -> Result<Oper> {
        let n = w.len();
        if n == 0 {
            return Err(Error::Invalid("an oper needs N ≥ 1".into()));
        }
        let ring = w[0].ring().clone();
        for c in &w {
            c.same_ring(&DiffPoly::zero(&ring))?;
        }
        if flavor == Flavor::Sl && !w[0].is_zero() {
            return Err(Error::Invalid("SL opers have W_1 = 0".into()));
        }
        Ok(Oper { n, flavor, convention, w })
    }

    /// κ²∂² − T.
    pub fn sl2(t: &DiffPoly) -> Oper {
        let r = t.ring().clone();
        Oper::new(Flavor::Sl, Convention::Minus, alloc::vec![DiffPoly::zero(&r), t.clone()]).expect("valid SL2 data")
    }

    /// κ³∂³ − Tκ∂ − W.
    pub fn sl3(t: &DiffPoly, w: &DiffPoly) -> Oper {
        let r = t.ring().clone();
        Oper::new(Flavor::Sl, Convention::Minus, alloc::vec![DiffPoly::zero(&r), t.clone(), w.clone()])
            .expect("valid SL3 data")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> i32 {
        self.n as i32
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn ring(&self) -> &Ring {
        self.w[0].ring()
    }

    pub fn w(&self, j: usize) -> &DiffPoly {
        &self.w[j - 1]
    }

    pub fn coefficients(&self) -> &[DiffPoly] {
        &self.w
    }

    /// The same operator with its coefficients stored in the other convention.
    pub fn to_convention(&self, c: Convention) -> Oper {
        if c == self.convention {
            return self.clone();
        }
        Oper { n: self.n, flavor: self.flavor, convention: c, w: self.w.iter().map(|a| -a).collect() }
    }

    pub fn symbol(&self) -> PsiSymbol {
        let r = self.ring().clone();
        let n = self.order();
        let s = q(self.convention.sign());
        let mut terms = alloc::vec![(n, DiffPoly::kappa(&r, n))];
        for j in 1..=self.n {
            let deg = n - j as i32;
            terms.push((deg, self.w[j - 1].kappa_shift(deg).scale(&s)));
        }
        PsiSymbol::from_terms(&r, terms)
    }

    /// The variations δW_j encoded by an operator δL of degree ≤ N−1.
    pub fn read_off(&self, delta: &PsiSymbol) -> Result<Vec<DiffPoly>> {
        let n = self.order();
        if let Some(d) = delta.degree() {
            if d >= n {
                return Err(Error::DegreeViolation { degree: d, max: n - 1 });
            }
        }
        if delta.lowest().is_some_and(|l| l < 0) {
            return Err(Error::NotDifferential);
        }
        if delta.floor() > 0 {
            return Err(Error::FloorTooLow { requested: 0, valid: delta.floor() });
        }
        let s = q(self.convention.sign());
        Ok((1..=self.n).map(|j| {
            let deg = n - j as i32;
            delta.coeff(deg).kappa_shift(-deg).scale(&s)
        }).collect())
    }

    /// The operator whose read-off is the given list of variations.
    pub fn write_on(&self, deltas: &[DiffPoly]) -> PsiSymbol {
        let r = self.ring().clone();
        let n = self.order();
        let s = q(self.convention.sign());
        PsiSymbol::from_terms(
            &r,
            deltas.iter().enumerate().map(|(i, d)| {
                let deg = n - 1 - i as i32;
                (deg, d.kappa_shift(deg).scale(&s))
            }),
        )
    }

    /// Default working floor −(N+3).
    pub fn default_floor(&self) -> i32 {
        -(self.order() + 3)
    }

    /// ∫Res(L∘X).
    pub fn pair(&self, x: &PsiSymbol) -> Result<Functional> {
        Ok(Functional::new(self.symbol().compose(x, -1)?.res()?))
    }

    /// ∫Res(X∘L).
    pub fn pair_right(&self, x: &PsiSymbol) -> Result<Functional> {
        Ok(Functional::new(x.compose(&self.symbol(), -1)?.res()?))
    }
}

/// Division by a monic oper: D = Q∘L + R with deg R < N.
pub fn reduce_mod_oper(d: &PsiSymbol, l: &Oper) -> Result<(PsiSymbol, PsiSymbol)> {
    if !d.is_differential() || d.floor() > 0 {
        return Err(Error::NotDifferential);
    }
    let r = l.ring().clone();
    let ls = l.symbol();
    let n = l.order();
    let mut rem = d.plus_part();
    let mut quo = PsiSymbol::zero(&r);
    while let Some(deg) = rem.degree() {
        if deg < n {
            break;
        }
        let t = PsiSymbol::monomial(&r, deg - n, rem.coeff(deg).kappa_shift(-n));
        rem = &rem - &t.compose(&ls, EXACT)?;
        quo = &quo + &t;
    }
    Ok((quo, rem))
}
