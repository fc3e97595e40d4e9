use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use super::poly::{canonicalize, q, DiffPoly, Monomial, Q};
use super::ring::{FieldId, JetKey, Ring};
use crate::error::{Error, Result};

/// Left graded derivative of one monomial: the factor is brought to the front before removal.
fn partial_mono(ring: &Ring, m: &Monomial, key: JetKey) -> Option<(Q, Monomial)> {
    let pos = m.factors.iter().position(|(k, _)| *k == key)?;
    let e = m.factors[pos].1;
    let mut c = q(e as i64);
    if ring.parity(key.field).is_odd() {
        let before = m.factors[..pos].iter().filter(|(k, _)| ring.parity(k.field).is_odd()).count();
        if before % 2 == 1 {
            c = -c;
        }
    }
    let mut factors = m.factors.clone();
    if e == 1 {
        factors.remove(pos);
    } else {
        factors[pos].1 = e - 1;
    }
    Some((c, Monomial { kappa: m.kappa, factors }))
}

impl DiffPoly {
    /// Left graded partial derivative with respect to a jet coordinate.
    pub fn partial(&self, key: JetKey) -> DiffPoly {
        let mut out = DiffPoly::zero(self.ring());
        for (m, c) in self.terms() {
            if let Some((f, mm)) = partial_mono(self.ring(), m, key) {
                out.add_term(mm, c * f);
            }
        }
        out
    }

    /// Applies the even derivation determined by its values on jets.
    pub fn apply_even_derivation(&self, mut value: impl FnMut(JetKey) -> DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero(self.ring());
        for key in self.jets() {
            let v = value(key);
            if v.is_zero() {
                continue;
            }
            out = &out + &(&v * &self.partial(key));
        }
        out
    }

    pub fn d_z(&self) -> DiffPoly {
        let ring = self.ring().clone();
        self.apply_even_derivation(|k| DiffPoly::jet(&ring, k.shift(1, 0)))
    }

    pub fn d_zbar(&self) -> DiffPoly {
        let ring = self.ring().clone();
        self.apply_even_derivation(|k| DiffPoly::jet(&ring, k.shift(0, 1)))
    }

    pub fn d_z_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.d_z();
        }
        p
    }

    pub fn d_zbar_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.d_zbar();
        }
        p
    }

    /// Variational derivative with respect to a field.
    pub fn euler(&self, field: FieldId) -> DiffPoly {
        let mut out = DiffPoly::zero(self.ring());
        for key in self.jets().into_iter().filter(|k| k.field == field) {
            let mut t = self.partial(key).d_z_n(key.dz as u32).d_zbar_n(key.dzbar as u32);
            if (key.dz + key.dzbar) % 2 == 1 {
                t = -t;
            }
            out = &out + &t;
        }
        out
    }

    pub fn euler_by_name(&self, name: &str) -> Result<DiffPoly> {
        Ok(self.euler(self.ring().field(name)?))
    }

    /// Membership in Im d_z + Im d_zbar, decided by the variational test.
    pub fn is_total_derivative(&self) -> Result<bool> {
        if self.has_constant_term() {
            return Err(Error::ConstantTerm);
        }
        Ok(self.fields().into_iter().all(|f| self.euler(f).is_zero()))
    }

    /// Returns q with d_z(q) = self, treating every z̄-jet as an independent field. The result has
    /// no constant term.
    pub fn integrate_total_derivative(&self) -> Result<DiffPoly> {
        if self.has_constant_term() {
            return Err(Error::ConstantTerm);
        }
        let ring = self.ring().clone();
        let mut rest = self.clone();
        let mut acc = DiffPoly::zero(&ring);
        loop {
            let jets = rest.jets();
            let top = match jets.iter().map(|k| k.dz).max() {
                None => return Ok(acc),
                Some(m) => m,
            };
            if top == 0 {
                return Err(Error::NotExact(rest.to_string()));
            }
            let keys: Vec<JetKey> = jets.iter().copied().filter(|k| k.dz == top).collect();
            let lowered: BTreeSet<JetKey> = keys.iter().map(|k| JetKey::new(k.field, k.dz - 1, k.dzbar)).collect();
            let mut step = DiffPoly::zero(&ring);
            for key in &keys {
                let a = rest.partial(*key);
                let below = JetKey::new(key.field, key.dz - 1, key.dzbar);
                for (m, c) in a.terms() {
                    let d: u32 = m.factors.iter().filter(|(k, _)| lowered.contains(k)).map(|(_, e)| *e).sum();
                    let mut seq = alloc::vec![(below, 1u32)];
                    seq.extend(m.factors.iter().copied());
                    if let Some((neg, factors)) = canonicalize(&ring, &seq) {
                        let v = c / q(d as i64 + 1);
                        step.add_term(Monomial { kappa: m.kappa, factors }, if neg { -v } else { v });
                    }
                }
            }
            let next = &rest - &step.d_z();
            if next.jets().iter().any(|k| k.dz >= top) {
                return Err(Error::NotExact(rest.to_string()));
            }
            acc = &acc + &step;
            rest = next;
        }
    }

    /// Simultaneous graded substitution of jets. With `prolong`, a rule for `f[0,n]` also rewrites
    /// `f[m,n]` by the m-th z-derivative of its right-hand side.
    pub fn substitute(&self, rules: &BTreeMap<JetKey, DiffPoly>, prolong: bool) -> Result<DiffPoly> {
        check_rules(self.ring(), rules, if prolong { Match::AlongZ } else { Match::Exact })?;
        if !prolong {
            return Ok(self.substitute_unchecked(rules));
        }
        let mut expanded = BTreeMap::new();
        for k in self.jets() {
            if let Some(rhs) = rules.get(&JetKey::new(k.field, 0, k.dzbar)) {
                expanded.insert(k, rhs.d_z_n(k.dz as u32));
            }
        }
        Ok(self.substitute_unchecked(&expanded))
    }

    fn substitute_unchecked(&self, rules: &BTreeMap<JetKey, DiffPoly>) -> DiffPoly {
        let ring = self.ring().clone();
        let mut out = DiffPoly::zero(&ring);
        for (m, c) in self.terms() {
            let mut prod = DiffPoly::monomial(&ring, c.clone(), Monomial { kappa: m.kappa, factors: Vec::new() });
            for (k, e) in &m.factors {
                let piece = match rules.get(k) {
                    Some(v) => v.pow(*e),
                    None => DiffPoly::monomial(&ring, q(1), Monomial { kappa: 0, factors: alloc::vec![(*k, *e)] }),
                };
                prod = &prod * &piece;
            }
            out = &out + &prod;
        }
        out
    }

    /// Rewrites with rules on heads `f[0,n]`, prolonged in both directions and applied until no
    /// rewritable jet remains.
    pub fn reduce_with(&self, rules: &BTreeMap<JetKey, DiffPoly>) -> Result<DiffPoly> {
        let ring = self.ring().clone();
        check_rules(&ring, rules, Match::Both)?;
        let head_of = |k: JetKey| -> Option<JetKey> {
            rules.keys().copied().find(|h| h.field == k.field && k.dzbar >= h.dzbar)
        };
        let mut cache: BTreeMap<JetKey, DiffPoly> = BTreeMap::new();
        let mut p = self.clone();
        for _ in 0..4096 {
            let targets: Vec<JetKey> = p.jets().into_iter().filter(|k| head_of(*k).is_some()).collect();
            if targets.is_empty() {
                return Ok(p);
            }
            let mut local = BTreeMap::new();
            for k in targets {
                let h = head_of(k).expect("target has a head");
                let v = cache
                    .entry(k)
                    .or_insert_with(|| rules[&h].d_z_n(k.dz as u32).d_zbar_n((k.dzbar - h.dzbar) as u32))
                    .clone();
                local.insert(k, v);
            }
            p = p.substitute_unchecked(&local);
        }
        Err(Error::CyclicRules)
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Match {
    Exact,
    AlongZ,
    Both,
}

impl Match {
    fn hits(self, head: JetKey, k: JetKey) -> bool {
        head.field == k.field
            && match self {
                Match::Exact => head == k,
                Match::AlongZ => head.dzbar == k.dzbar,
                Match::Both => k.dzbar >= head.dzbar,
            }
    }
}

fn check_rules(ring: &Ring, rules: &BTreeMap<JetKey, DiffPoly>, mode: Match) -> Result<()> {
    for (head, rhs) in rules {
        rhs.same_ring(&DiffPoly::zero(ring))?;
        let name = &ring.symbol(head.field).name;
        if mode != Match::Exact && head.dz != 0 {
            return Err(Error::Invalid(alloc::format!("prolonged rule head for `{name}` must have dz = 0")));
        }
        match rhs.parity() {
            Some(p) if p == ring.parity(head.field) || rhs.is_zero() => {}
            _ => return Err(Error::ParityMismatch(name.clone())),
        }
    }
    let edges: BTreeMap<JetKey, Vec<JetKey>> = rules
        .iter()
        .map(|(head, rhs)| {
            let js = rhs.jets();
            let out = rules.keys().copied().filter(|h| js.iter().any(|k| mode.hits(*h, *k))).collect();
            (*head, out)
        })
        .collect();
    fn visit(n: JetKey, edges: &BTreeMap<JetKey, Vec<JetKey>>, state: &mut BTreeMap<JetKey, u8>) -> bool {
        match state.get(&n) {
            Some(1) => return false,
            Some(2) => return true,
            _ => {}
        }
        state.insert(n, 1);
        for m in edges.get(&n).into_iter().flatten() {
            if !visit(*m, edges, state) {
                return false;
            }
        }
        state.insert(n, 2);
        true
    }
    let mut state = BTreeMap::new();
    for h in rules.keys() {
        if !visit(*h, &edges, &mut state) {
            return Err(Error::CyclicRules);
        }
    }
    Ok(())
}
