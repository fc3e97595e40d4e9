use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::psido::{Convention, Flavor, Oper, PsiSymbol};
use crate::symjet::{qf, DiffPoly, FieldSymbol, Functional, Ring};

pub(crate) fn ring() -> Ring {
    Ring::new(vec![
        FieldSymbol::even("T").weight(2),
        FieldSymbol::even("W").weight(3),
        FieldSymbol::even("a"),
        FieldSymbol::even("b"),
        FieldSymbol::even("c"),
        FieldSymbol::even("V"),
    ])
    .unwrap()
}

pub(crate) fn v(r: &Ring, n: &str, m: u16) -> DiffPoly {
    DiffPoly::var(r, n, m, 0).unwrap()
}

/// num, den, κ power and factors.
pub(crate) type Term<'a> = (i64, i64, i32, &'a [(&'a str, u16)]);

/// Σ (num/den) κ^p Π fields[m].
pub(crate) fn poly(r: &Ring, terms: &[Term]) -> DiffPoly {
    let mut out = DiffPoly::zero(r);
    for (num, den, p, fs) in terms {
        let mut t = DiffPoly::kappa(r, *p).scale(&qf(*num, *den));
        for (name, m) in fs.iter() {
            t = &t * &v(r, name, *m);
        }
        out = &out + &t;
    }
    out
}

fn n3(r: &Ring) -> Agd {
    Agd::new(Oper::sl3(&v(r, "T", 0), &v(r, "W", 0)))
}

fn n2(r: &Ring) -> Agd {
    Agd::new(Oper::sl2(&v(r, "T", 0)))
}

/// Printed anchor of a section in the field `e`: (δ₁T, δ₁W, δ₂T, δ₂W).
fn printed_n3_anchor(r: &Ring, e: &str) -> [DiffPoly; 4] {
    [
        poly(r, &[(-2, 1, 3, &[(e, 3)]), (2, 1, 1, &[("T", 0), (e, 1)]), (1, 1, 1, &[("T", 1), (e, 0)])]),
        poly(
            r,
            &[
                (-1, 1, 4, &[(e, 4)]),
                (3, 1, 1, &[("W", 0), (e, 1)]),
                (1, 1, 1, &[("W", 1), (e, 0)]),
                (1, 1, 2, &[("T", 0), (e, 2)]),
            ],
        ),
        poly(
            r,
            &[
                (1, 1, 4, &[(e, 4)]),
                (-1, 1, 2, &[("T", 0), (e, 2)]),
                (3, 1, 1, &[("W", 0), (e, 1)]),
                (-2, 1, 2, &[("T", 1), (e, 1)]),
                (2, 1, 1, &[("W", 1), (e, 0)]),
                (-1, 1, 2, &[("T", 2), (e, 0)]),
            ],
        ),
        poly(
            r,
            &[
                (2, 3, 5, &[(e, 5)]),
                (-4, 3, 3, &[("T", 0), (e, 3)]),
                (-2, 1, 3, &[("T", 1), (e, 2)]),
                (2, 3, 1, &[("T", 0), ("T", 0), (e, 1)]),
                (-2, 1, 3, &[("T", 2), (e, 1)]),
                (2, 1, 2, &[("W", 1), (e, 1)]),
                (1, 1, 2, &[("W", 2), (e, 0)]),
                (-2, 3, 3, &[("T", 3), (e, 0)]),
                (2, 3, 1, &[("T", 0), ("T", 1), (e, 0)]),
            ],
        ),
    ]
}

#[test]
fn zero_section_has_zero_anchor() {
    let r = ring();
    let agd = n3(&r);
    let vars = agd.anchor(&Section::zero(&r, 3)).unwrap();
    assert!(vars.iter().all(|p| p.is_zero()));
    assert!(agd.induced_action(&Section::zero(&r, 3)).unwrap().is_zero());
}

#[test]
fn n3_anchor_matches_printed() {
    let r = ring();
    let agd = n3(&r);
    let z = DiffPoly::zero(&r);
    let [d1t, d1w, d2t, d2w] = printed_n3_anchor(&r, "a");
    let one = agd.anchor(&embed_n3(&agd, &v(&r, "a", 0), &z).unwrap()).unwrap();
    assert!(one[0].is_zero());
    assert_eq!(one[1], d1t);
    assert_eq!(one[2], d1w);
    let two = agd.anchor(&embed_n3(&agd, &z, &v(&r, "a", 0)).unwrap()).unwrap();
    assert_eq!(two[1], d2t);
    assert_eq!(two[2], d2w);
}

#[test]
fn unit_tail_does_not_move_the_anchor() {
    let r = ring();
    let agd = n3(&r);
    let x = embed_n3(&agd, &v(&r, "a", 0), &v(&r, "b", 0)).unwrap();
    let tail = Section::new(3, &PsiSymbol::del(&r, -4)).unwrap();
    assert_eq!(agd.anchor(&(&x + &tail)).unwrap(), agd.anchor(&x).unwrap());
}

#[test]
fn n3_brackets_match_printed() {
    let r = ring();
    let agd = n3(&r);
    let z = DiffPoly::zero(&r);
    let (a, b) = (v(&r, "a", 0), v(&r, "b", 0));
    let cases: Vec<(Section, Section, DiffPoly, DiffPoly)> = vec![
        (
            embed_n3(&agd, &a, &z).unwrap(),
            embed_n3(&agd, &b, &z).unwrap(),
            poly(&r, &[(1, 1, 1, &[("a", 0), ("b", 1)]), (-1, 1, 1, &[("b", 0), ("a", 1)])]),
            z.clone(),
        ),
        (
            embed_n3(&agd, &a, &z).unwrap(),
            embed_n3(&agd, &z, &b).unwrap(),
            poly(&r, &[(-1, 1, 2, &[("b", 0), ("a", 2)])]),
            poly(&r, &[(-2, 1, 1, &[("b", 0), ("a", 1)]), (1, 1, 1, &[("a", 0), ("b", 1)])]),
        ),
        (
            embed_n3(&agd, &z, &a).unwrap(),
            embed_n3(&agd, &z, &b).unwrap(),
            poly(
                &r,
                &[
                    (2, 3, 3, &[("b", 0), ("a", 3)]),
                    (-2, 3, 3, &[("a", 0), ("b", 3)]),
                    (2, 3, 1, &[("T", 0), ("a", 0), ("b", 1)]),
                    (-2, 3, 1, &[("T", 0), ("b", 0), ("a", 1)]),
                ],
            ),
            poly(&r, &[(1, 1, 2, &[("b", 0), ("a", 2)]), (-1, 1, 2, &[("a", 0), ("b", 2)])]),
        ),
    ];
    for (x, y, e1, e2) in cases {
        let (s, _) = agd.lie_bracket(&x, &y).unwrap();
        assert!(agd.section_condition(&s).unwrap());
        assert_eq!(unembed_n3(&s), (e1, e2));
        let (back, _) = agd.lie_bracket(&y, &x).unwrap();
        assert_eq!(&s + &back, Section::zero(&r, 3));
    }
}

#[test]
fn n2_anchor_matches_printed() {
    let r = ring();
    let agd = n2(&r);
    let x = embed_n2(&agd, &v(&r, "a", 0)).unwrap();
    let d = agd.anchor(&x).unwrap();
    let expect =
        poly(&r, &[(-1, 1, 1, &[("a", 0), ("T", 1)]), (-2, 1, 1, &[("T", 0), ("a", 1)]), (1, 2, 3, &[("a", 3)])]);
    assert_eq!(d[1], expect);
}

fn types(agd: &Agd, r: &Ring, name: &str) -> [Section; 2] {
    let z = DiffPoly::zero(r);
    let f = v(r, name, 0);
    [embed_n3(agd, &f, &z).unwrap(), embed_n3(agd, &z, &f).unwrap()]
}

#[test]
fn n3_homomorphism_on_all_pairings() {
    let r = ring();
    let agd = n3(&r);
    let (xa, xb) = (types(&agd, &r, "a"), types(&agd, &r, "b"));
    for x in &xa {
        for y in &xb {
            assert!(homomorphism_defect(&agd, x, y).unwrap().iter().all(|d| d.is_zero()));
        }
    }
    let mixed = embed_n3(&agd, &v(&r, "a", 0), &v(&r, "c", 0)).unwrap();
    assert!(homomorphism_defect(&agd, &mixed, &xb[1]).unwrap().iter().all(|d| d.is_zero()));
}

#[test]
fn n2_homomorphism() {
    let r = ring();
    let agd = n2(&r);
    let x = embed_n2(&agd, &v(&r, "a", 0)).unwrap();
    let y = embed_n2(&agd, &v(&r, "b", 0)).unwrap();
    assert!(homomorphism_defect(&agd, &x, &y).unwrap().iter().all(|d| d.is_zero()));
}

#[test]
fn n2_bracket_and_pairing_normalizations() {
    let r = ring();
    let agd = n2(&r);
    let (x, y) = (embed_n2(&agd, &v(&r, "a", 0)).unwrap(), embed_n2(&agd, &v(&r, "b", 0)).unwrap());
    let (s, _) = agd.lie_bracket(&x, &y).unwrap();
    let printed = poly(&r, &[(1, 1, 1, &[("a", 0), ("b", 1)]), (-1, 1, 1, &[("b", 0), ("a", 1)])]);
    assert_eq!(unembed_n2(&s), printed.scale(&conformance::bracket_sign(2)));
    let vir = poly(
        &r,
        &[(-1, 2, 3, &[("a", 0), ("b", 3)]), (2, 1, 1, &[("a", 0), ("T", 0), ("b", 1)]), (1, 1, 1, &[("a", 0), ("T", 1), ("b", 0)])],
    );
    let raw = agd.agd_bracket(&x, &y).unwrap();
    let scaled = Functional::new(&conformance::pairing_scale(&r) * &raw.density);
    assert!(scaled.equals(&Functional::new(vir)));
}

#[test]
fn agd_bracket_forms_agree_and_match_the_anchor_pairing() {
    let r = ring();
    for agd in [n2(&r), n3(&r)] {
        let x = Section::from_coeffs(&r, agd.n(), &[v(&r, "a", 0), v(&r, "b", 1)]).unwrap();
        let y = Section::from_coeffs(&r, agd.n(), &[v(&r, "c", 0), v(&r, "a", 0)]).unwrap();
        let f = agd.agd_bracket(&x, &y).unwrap();
        assert!(f.equals(&agd.agd_bracket_minus_form(&x, &y).unwrap()));
        assert!(f.equals(&agd.pair(&x, &agd.anchor_operator(&y).unwrap()).unwrap()));
        assert!((&f + &agd.agd_bracket(&y, &x).unwrap()).is_zero());
        assert!(agd.agd_bracket(&x, &x).unwrap().is_zero());
    }
}

#[test]
fn bracket_is_antisymmetric() {
    let r = ring();
    let agd = n3(&r);
    let x = embed_n3(&agd, &v(&r, "a", 0), &v(&r, "b", 0)).unwrap();
    assert!(agd.lie_bracket(&x, &x).unwrap().0.is_zero());
}

#[test]
fn jacobi_anomalies_vanish() {
    let r = ring();
    let agd = n3(&r);
    let (a, b, c) = (types(&agd, &r, "a"), types(&agd, &r, "b"), types(&agd, &r, "c"));
    for (i, j, k) in [(1, 1, 1), (1, 1, 0), (0, 0, 0), (0, 1, 0)] {
        let d = jacobi_defect(&agd, &a[i], &b[j], &c[k]).unwrap();
        assert!(d.is_zero(), "triple {i}{j}{k}: {:?}", unembed_n3(&d));
    }
}

/// The ε1 part of Σ_cp ⌊⌊a,b⌋,c⌋ plus λκ(ab′ − ba′)δ_c T over ε2-type triples.
fn printed_anomaly_sum(agd: &Agd, r: &Ring, lambda: (i64, i64)) -> DiffPoly {
    let names = ["a", "b", "c"];
    let mut total = DiffPoly::zero(r);
    for s in 0..3 {
        let (p, q, w) = (names[s], names[(s + 1) % 3], names[(s + 2) % 3]);
        let (sp, sq, sw) = (types(agd, r, p)[1].clone(), types(agd, r, q)[1].clone(), types(agd, r, w)[1].clone());
        let (pq, _) = agd.lie_bracket(&sp, &sq).unwrap();
        let (outer, _) = agd.lie_bracket(&pq, &sw).unwrap();
        let dt = agd.anchor(&sw).unwrap()[1].clone();
        let wr = poly(r, &[(lambda.0, lambda.1, 1, &[(p, 0), (q, 1)]), (-lambda.0, lambda.1, 1, &[(q, 0), (p, 1)])]);
        total = &(&total + &unembed_n3(&outer).0) + &(&wr * &dt);
    }
    total
}

#[test]
fn printed_anomaly_coefficient_differs() {
    let r = ring();
    let agd = n3(&r);
    assert!(printed_anomaly_sum(&agd, &r, (2, 3)).is_zero());
    assert!(!printed_anomaly_sum(&agd, &r, (-1, 1)).is_zero());
}

#[test]
fn central_term_leading_densities() {
    let r = ring();
    let agd = n3(&r);
    let (a, b) = (types(&agd, &r, "a"), types(&agd, &r, "b"));
    let scale = conformance::pairing_scale(&r);
    let printed: [(usize, usize, DiffPoly, i64); 3] = [
        (0, 0, poly(&r, &[(-2, 1, 2, &[("a", 0), ("b", 3)])]), 3),
        (0, 1, poly(&r, &[(1, 1, 3, &[("a", 0), ("b", 4)])]), 4),
        (1, 1, poly(&r, &[(2, 3, 4, &[("a", 0), ("b", 5)])]), 5),
    ];
    for (i, j, lam, d) in printed {
        let (p, dens) = central_term_leading(&agd, &a[i], &b[j], &scale).unwrap().unwrap();
        assert_eq!(p as i64, d - 1);
        assert!(Functional::new(dens).equals(&Functional::new(lam.scale_int(d))));
    }
    let flat = Section::from_coeffs(&r, 3, &[v(&r, "a", 0)]).unwrap();
    let gl = Agd::new(Oper::new(Flavor::Gl, Convention::Plus, vec![DiffPoly::zero(&r), DiffPoly::zero(&r), DiffPoly::zero(&r)]).unwrap());
    let x = flat.map_coeffs(|_, c| c.kappa_shift(0));
    let k_free = central_term_leading(&gl, &x, &x, &DiffPoly::one(&r)).unwrap();
    assert!(k_free.is_none());
}

fn dbar(r: &Ring, n: &str) -> DiffPoly {
    DiffPoly::var(r, n, 0, 1).unwrap()
}

#[test]
fn cocycles_are_closed() {
    let r = ring();
    let agd2 = n2(&r);
    let c2 = |x: &Section| Ok(Functional::new(&unembed_n2(x) * &dbar(&r, "T")));
    let (x, y) = (embed_n2(&agd2, &v(&r, "a", 0)).unwrap(), embed_n2(&agd2, &v(&r, "b", 0)).unwrap());
    assert!(cocycle_defect(&agd2, &c2, &x, &y).unwrap().is_zero());

    let agd3 = n3(&r);
    let c1 = |x: &Section| Ok(Functional::new(&unembed_n3(x).0 * &dbar(&r, "T")));
    let c2 = |x: &Section| Ok(Functional::new(&unembed_n3(x).1 * &dbar(&r, "W")));
    let (a, b) = (types(&agd3, &r, "a"), types(&agd3, &r, "b"));
    for x in &a {
        for y in &b {
            let sum = |s: &Section| Ok(&c1(s)? + &c2(s)?);
            assert!(cocycle_defect(&agd3, &sum, x, y).unwrap().is_zero());
        }
    }
}

#[test]
fn coboundaries_are_detected() {
    let r = ring();
    let agd = n2(&r);
    let t = v(&r, "T", 0);
    let f = Functional::new(&t * &t);
    let c = |x: &Section| Ok(Functional::new(agd.induced_action(x)?.apply(&f.density)?));
    let probes = [embed_n2(&agd, &v(&r, "a", 0)).unwrap(), embed_n2(&agd, &v(&r, "b", 0)).unwrap()];
    assert!(cocycle_defect(&agd, &c, &probes[0], &probes[1]).unwrap().is_zero());
    let candidates = [Functional::new(t.clone()), Functional::new(&t * &t), Functional::new(&t * &v(&r, "T", 2))];
    let lam = coboundary_primitive(&agd, &c, &probes, &candidates).unwrap().unwrap();
    assert_eq!(lam, vec![crate::symjet::q(0), crate::symjet::q(1), crate::symjet::q(0)]);
    let shifted = |x: &Section| Ok(Functional::new(&unembed_n2(x) * &dbar(&r, "T")));
    assert!(coboundary_primitive(&agd, &shifted, &probes, &candidates).unwrap().is_none());
}

#[test]
fn section_condition_examples() {
    let r = ring();
    let flat = Agd::new(Oper::sl2(&DiffPoly::zero(&r)));
    let constant = Section::from_coeffs(&r, 2, &[DiffPoly::int(&r, 5)]).unwrap();
    assert!(flat.section_condition(&constant).unwrap());
    let agd = n3(&r);
    let x = Section::from_coeffs(&r, 3, &[v(&r, "a", 0), v(&r, "b", 0), v(&r, "c", 0)]).unwrap();
    assert!(!agd.section_condition(&x).unwrap());
    let printed = &(&(&v(&r, "a", 2).kappa_shift(2) - &(&v(&r, "T", 0) * &v(&r, "a", 0)))
        + &v(&r, "b", 1).kappa_shift(2).scale_int(3))
        + &v(&r, "c", 0).kappa_shift(2).scale_int(3);
    assert_eq!(agd.sop_residue(&x).unwrap(), -printed.d_z().kappa_shift(1));
    let y = agd.sl_correct(&x).unwrap();
    assert!(agd.section_condition(&y).unwrap());
    assert_eq!(agd.sl_correct(&y).unwrap(), y);
    let lone = Section::from_coeffs(&r, 3, &[DiffPoly::zero(&r), DiffPoly::zero(&r), v(&r, "a", 0)]).unwrap();
    assert_eq!(agd.sop_residue(&lone).unwrap(), v(&r, "a", 1).kappa_shift(3).scale_int(-3));
    assert!(agd.sl_correct(&lone).unwrap().is_zero());
}

#[test]
fn w1_is_preserved_exactly_under_the_section_condition() {
    let r = ring();
    let gl = Agd::new(Oper::new(Flavor::Gl, Convention::Plus, vec![v(&r, "V", 0), v(&r, "T", 0), v(&r, "W", 0)]).unwrap());
    let x = Section::from_coeffs(&r, 3, &[v(&r, "a", 0), v(&r, "b", 0), v(&r, "c", 0)]).unwrap();
    let (top, res) = w1_defect(&gl, &x).unwrap();
    assert!(!top.is_zero());
    assert_eq!(top, res);
    let y = gl.sl_correct(&x).unwrap();
    assert!(w1_defect(&gl, &y).unwrap().0.is_zero());
}

#[test]
fn degree_violation_is_a_hard_error() {
    let r = ring();
    let agd = n3(&r);
    let bad = Section::from_coeffs(&r, 3, &[v(&r, "a", 0)]).unwrap();
    assert!(agd.anchor(&bad).is_ok());
    assert!(Section::new(3, &PsiSymbol::del(&r, 0)).is_err());
    assert!(Section::new(3, &PsiSymbol::del(&r, -5)).is_err());
}

/// f is a z-constant base function with D_X f = g.
fn leibniz_ring() -> Ring {
    Ring::new(vec![FieldSymbol::even("T"), FieldSymbol::even("a"), FieldSymbol::even("b"), FieldSymbol::even("f"), FieldSymbol::even("g")])
        .unwrap()
}

fn z_constant(p: &DiffPoly, r: &Ring) -> DiffPoly {
    let (f, g) = (r.field("f").unwrap(), r.field("g").unwrap());
    p.filter(|m, _| m.factors.iter().all(|(k, _)| !((k.field == f || k.field == g) && k.dz > 0)))
}

#[test]
fn leibniz_rule_at_n2() {
    let r = leibniz_ring();
    let agd = Agd::new(Oper::sl2(&v(&r, "T", 0)));
    let x = embed_n2(&agd, &v(&r, "a", 0)).unwrap();
    let y = embed_n2(&agd, &v(&r, "b", 0)).unwrap();
    let fy = y.left_mul(&v(&r, "f", 0));
    let mut dx = agd.induced_action(&x).unwrap().assignments().clone();
    dx.insert(r.field("f").unwrap(), v(&r, "g", 0));
    let dx = crate::symjet::Evolutionary::new(&r, dx).unwrap();
    let dy = agd.induced_action(&y).unwrap();
    let dfy = crate::symjet::Evolutionary::new(
        &r,
        dy.assignments().iter().map(|(k, p)| (*k, &v(&r, "f", 0) * p)).collect(),
    )
    .unwrap();
    let frozen = agd.lie_bracket(&x, &fy).unwrap().0.map_coeffs(|_, c| z_constant(c, &r));
    let full = &(&frozen - &vary_section(&dx, &fy).unwrap()) + &vary_section(&dfy, &x).unwrap();
    let (xy, _) = agd.lie_bracket(&x, &y).unwrap();
    let expect = &xy.left_mul(&v(&r, "f", 0)) - &y.left_mul(&v(&r, "g", 0));
    assert_eq!(full.map_coeffs(|_, c| z_constant(c, &r)), expect);
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

    #[test]
    fn homomorphism_on_random_combinations(c in proptest::collection::vec(-3i64..=3, 4)) {
        let r = ring();
        let agd = n3(&r);
        let x = embed_n3(&agd, &v(&r, "a", 0).scale_int(c[0]), &v(&r, "b", 0).scale_int(c[1])).unwrap();
        let y = embed_n3(&agd, &v(&r, "c", 1).scale_int(c[2]), &v(&r, "a", 0).scale_int(c[3])).unwrap();
        proptest::prop_assert!(homomorphism_defect(&agd, &x, &y).unwrap().iter().all(|d| d.is_zero()));
    }

    #[test]
    fn sl_correct_always_lands_in_the_section_condition(c in proptest::collection::vec((-2i64..=2, 0u16..3), 3)) {
        let r = ring();
        let agd = n3(&r);
        let names = ["a", "b", "c"];
        let coeffs: Vec<DiffPoly> = c.iter().zip(names).map(|((k, m), n)| v(&r, n, *m).scale_int(*k)).collect();
        let x = Section::from_coeffs(&r, 3, &coeffs).unwrap();
        proptest::prop_assert!(agd.section_condition(&agd.sl_correct(&x).unwrap()).unwrap());
    }
}
