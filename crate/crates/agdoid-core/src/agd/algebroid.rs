use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::section::{window, CentralTerm, Section};
use crate::error::{Error, Result};
use crate::psido::{Flavor, Oper, PsiSymbol, EXACT};
use crate::symjet::{q, DiffPoly, Evolutionary, Functional};

/// The algebroid over a fixed symbolic oper, with the truncation floor used for
/// pseudo-differential products.
#[derive(Clone, Debug)]
pub struct Agd {
    oper: Oper,
    floor: i32,
}

impl Agd {
    pub fn new(oper: Oper) -> Agd {
        let floor = oper.default_floor();
        Agd { oper, floor }
    }

    pub fn with_floor(oper: Oper, floor: i32) -> Agd {
        Agd { oper, floor }
    }

    pub fn oper(&self) -> &Oper {
        &self.oper
    }

    pub fn n(&self) -> usize {
        self.oper.n()
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    fn l(&self) -> PsiSymbol {
        self.oper.symbol()
    }

    fn check(&self, y: &Section) -> Result<()> {
        if y.n() != self.n() {
            return Err(Error::Invalid(format!("section for N = {} used over an oper of order {}", y.n(), self.n())));
        }
        if y.ring() != self.oper.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// δ_Y L = (LY)₊L − L(YL)₊ as an operator.
    pub fn anchor_operator(&self, y: &Section) -> Result<PsiSymbol> {
        self.check(y)?;
        let l = self.l();
        let ly = l.compose(y.symbol(), EXACT)?.plus_part();
        let yl = y.symbol().compose(&l, 0)?.plus_part();
        let d = &ly.compose(&l, EXACT)? - &l.compose(&yl, EXACT)?;
        if let Some(deg) = d.degree() {
            if deg >= self.oper.order() {
                return Err(Error::DegreeViolation { degree: deg, max: self.oper.order() - 1 });
            }
        }
        Ok(d)
    }

    /// Variations δ_Y W_j, index j−1.
    pub fn anchor(&self, y: &Section) -> Result<Vec<DiffPoly>> {
        self.oper.read_off(&self.anchor_operator(y)?)
    }

    /// The evolutionary derivation W_j ↦ δ_Y W_j on the oper's coefficient fields.
    pub fn induced_action(&self, y: &Section) -> Result<Evolutionary> {
        let vars = self.anchor(y)?;
        let ring = self.oper.ring().clone();
        let mut assign = BTreeMap::new();
        for (j, v) in vars.into_iter().enumerate() {
            let w = self.oper.w(j + 1);
            if w.is_zero() {
                if !v.is_zero() {
                    return Err(Error::Invalid(format!("anchor moves the frozen coefficient W_{}: {v}", j + 1)));
                }
                continue;
            }
            let f = w.as_field().ok_or_else(|| Error::Invalid(format!("oper coefficient `{w}` is not a field")))?;
            assign.insert(f, v);
        }
        Evolutionary::new(&ring, assign)
    }

    /// (YL)₋X − X(LY)₋ + X(LY)₊ − (YL)₊X at degrees −N..−1, before any SL correction. The
    /// ∂^{-(N+1)} slot depends on representatives below the window and is dropped.
    pub fn raw_bracket(&self, x: &Section, y: &Section) -> Result<Section> {
        self.check(x)?;
        self.check(y)?;
        let l = self.l();
        let (lo, _) = window(self.n());
        let (xs, ys) = (x.symbol(), y.symbol());
        let yl = ys.compose(&l, self.floor)?;
        let ly = l.compose(ys, EXACT)?;
        let a = yl.minus_part().compose(xs, lo)?;
        let b = xs.compose(&ly.minus_part(), lo)?;
        let c = xs.compose(&ly.plus_part(), lo)?;
        let d = yl.plus_part().compose(xs, lo)?;
        let sum = (&(&a - &b) + &c).checked_add(&-&d)?;
        Ok(Section::project(self.n(), &sum.window(lo + 1, -1)))
    }

    /// The section bracket, SL-corrected over SL opers, and its central term.
    pub fn lie_bracket(&self, x: &Section, y: &Section) -> Result<(Section, CentralTerm)> {
        let raw = self.raw_bracket(x, y)?;
        let s = match self.oper.flavor() {
            Flavor::Sl => self.sl_correct(&raw)?,
            Flavor::Gl => raw,
        };
        let c = self.agd_bracket(x, y)?;
        Ok((s, CentralTerm { value: Functional::new(c.density.d_kappa()) }))
    }

    /// ⟨LX(LY)₊⟩ − ⟨XL(YL)₊⟩.
    pub fn agd_bracket(&self, x: &Section, y: &Section) -> Result<Functional> {
        self.check(x)?;
        self.check(y)?;
        let l = self.l();
        let (xs, ys) = (x.symbol(), y.symbol());
        let lx = l.compose(xs, EXACT)?;
        let ly = l.compose(ys, EXACT)?.plus_part();
        let xl = xs.compose(&l, self.floor)?;
        let yl = ys.compose(&l, 0)?.plus_part();
        let first = lx.compose(&ly, -1)?.res()?;
        let second = xl.compose(&yl, -1)?.res()?;
        Ok(Functional::new(&first - &second))
    }

    /// ⟨XL(YL)₋⟩ − ⟨LX(LY)₋⟩.
    pub fn agd_bracket_minus_form(&self, x: &Section, y: &Section) -> Result<Functional> {
        self.check(x)?;
        self.check(y)?;
        let l = self.l();
        let (xs, ys) = (x.symbol(), y.symbol());
        let lx = l.compose(xs, EXACT)?;
        let ly = l.compose(ys, EXACT)?.minus_part();
        let xl = xs.compose(&l, self.floor)?;
        let yl = ys.compose(&l, self.floor)?.minus_part();
        let first = xl.compose(&yl, -1)?.res()?;
        let second = lx.compose(&ly, -1)?.res()?;
        Ok(Functional::new(&first - &second))
    }

    /// ⟨X δ⟩ = ∫Res(X∘δ) for a differential operator δ.
    pub fn pair(&self, x: &Section, delta: &PsiSymbol) -> Result<Functional> {
        self.check(x)?;
        Ok(Functional::new(x.symbol().compose(delta, -1)?.res()?))
    }

    /// Res[Y, L].
    pub fn sop_residue(&self, y: &Section) -> Result<DiffPoly> {
        self.check(y)?;
        y.symbol().commutator(&self.l(), -1)?.res()
    }

    pub fn section_condition(&self, y: &Section) -> Result<bool> {
        Ok(self.sop_residue(y)?.is_zero())
    }

    /// X + a∂^{-N} with Nκ^N a = ∫Res[X, L].
    pub fn sl_correct(&self, x: &Section) -> Result<Section> {
        let r = self.sop_residue(x)?;
        if r.is_zero() {
            return Ok(x.clone());
        }
        let n = self.oper.order();
        let a = r.integrate_total_derivative()?.kappa_shift(-n).scale(&(q(1) / q(n as i64)));
        let corr = Section::new(self.n(), &PsiSymbol::monomial(x.ring(), -n, a))?;
        x.checked_add(&corr)
    }
}
