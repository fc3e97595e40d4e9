//! One function per subcommand, each filling a report.

use std::fs;
use std::path::Path;

use agdoid_core::agd::{
    coboundary_primitive, cocycle_defect, conformance, embed_n2, embed_n3, homomorphism_defect, jacobi_defect, unembed_n2,
    unembed_n3, Agd, Section,
};
use agdoid_core::brst::{build_omega, nilpotency_check};
use agdoid_core::matrixoper::{abar_matrix, curvature, matrix_bracket_oracle, oper_matrix, solve_oper_lift, verify_w3_curvature, MatrixPoly};
use agdoid_core::poisson_fd::{random_sections, verify_algebroid_fd, PolyBivector};
use agdoid_core::psido::{Flavor, Oper};
use agdoid_core::symjet::{qf, DiffPoly, FieldSymbol, Functional, Q, Ring};
use agdoid_core::wphase::{canonical_bracket, canonical_pairs, compatibility_check, compatibility_with, constraint, dbar_deformation, hamiltonian, XiField};

use crate::eval::{evaluate, Env};
use crate::grammar::parse_script;
use crate::reference;
use crate::report::Report;
use crate::*;

/// Floor for pseudo-differential products inside parsed expressions.
const EXPRESSION_FLOOR: i32 = -8;

/// The term flipped by `brst check --control corrupt` when no index is given.
pub const DEFAULT_CORRUPT_INDEX: usize = 1;

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let t = cli.trunc;
    match &cli.group {
        Group::Agd(c) => match c {
            AgdCommand::Bracket(a) => agd_bracket(t, a),
            AgdCommand::Anchor(a) => agd_anchor(t, a),
            AgdCommand::Pair(a) => agd_pair(t, a),
            AgdCommand::N3Verify { control } => n3_verify(t, *control),
            AgdCommand::Jacobi { n, control } => agd_jacobi(t, *n, *control),
            AgdCommand::Cocycle { n, control } => agd_cocycle(t, *n, *control),
        },
        Group::Matrix(c) => match c {
            MatrixCommand::Lift { control } => matrix_lift(t, *control),
            MatrixCommand::Curvature => matrix_curvature(),
            MatrixCommand::W3Verify { control } => matrix_w3(*control),
        },
        Group::Phase(c) => match c {
            PhaseCommand::Constraint { n, control } => phase_constraint(t, *n, *control),
            PhaseCommand::Compat { n, control } => phase_compat(t, *n, *control),
            PhaseCommand::Homomorphism { n, control } => phase_homomorphism(t, *n, *control),
        },
        Group::Brst(c) => match c {
            BrstCommand::Omega { n } => brst_omega(*n),
            BrstCommand::Check { n, control, index } => brst_check(*n, *control, *index),
        },
        Group::Poisson(PoissonCommand::Verify { bivector, probes }) => poisson_verify(bivector, *probes, cli.seed),
        Group::Conformance(ConformanceCommand::Table) => Ok(conformance_table()),
    }
}

fn command_name(base: &str, flags: &[(&str, Option<String>)]) -> String {
    let mut s = base.to_string();
    for (k, v) in flags {
        if let Some(v) = v {
            s.push_str(&format!(" --{k} {v}"));
        }
    }
    s
}

fn control_name<T: ValueEnum>(c: Option<T>) -> Option<String> {
    c.and_then(|c| c.to_possible_value()).map(|p| p.get_name().to_string())
}

fn check_order(n: usize) -> Result<(), CliError> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("order {n} is not supported here; use 2 or 3")))
    }
}

/// An algebroid at the requested floor; floors shallower than the default are refused.
fn make_agd(oper: Oper, trunc: Option<i32>) -> Result<Agd, CliError> {
    let d = oper.default_floor();
    match trunc {
        None => Ok(Agd::new(oper)),
        Some(f) if f > d => {
            Err(CliError::Usage(format!("--trunc {f} is shallower than the default floor {d} at order {}", oper.n())))
        }
        Some(f) => Ok(Agd::with_floor(oper, f)),
    }
}

pub fn builtin_ring() -> Ring {
    Ring::new(vec![
        FieldSymbol::even("T").weight(2),
        FieldSymbol::even("W").weight(3),
        FieldSymbol::even("mu").weight(-1),
        FieldSymbol::even("rho").weight(-2),
        FieldSymbol::even("a"),
        FieldSymbol::even("b"),
        FieldSymbol::even("c"),
        FieldSymbol::even("d"),
    ])
    .expect("distinct built-in fields")
}

fn var(r: &Ring, name: &str) -> DiffPoly {
    DiffPoly::var(r, name, 0, 0).expect("built-in field")
}

fn builtin_oper(r: &Ring, n: usize) -> Oper {
    if n == 2 {
        Oper::sl2(&var(r, "T"))
    } else {
        Oper::sl3(&var(r, "T"), &var(r, "W"))
    }
}

/// Sections of each type carried by `field`, labelled by their parameter.
fn typed(agd: &Agd, field: &str, swapped: bool) -> Result<Vec<(String, Section)>, CliError> {
    let r = agd.oper().ring();
    let (f, z) = (var(r, field), DiffPoly::zero(r));
    Ok(if agd.n() == 2 {
        vec![(format!("eps={field}"), embed_n2(agd, &f)?)]
    } else if swapped {
        vec![(format!("eps1={field}"), embed_n3(agd, &z, &f)?), (format!("eps2={field}"), embed_n3(agd, &f, &z)?)]
    } else {
        vec![(format!("eps1={field}"), embed_n3(agd, &f, &z)?), (format!("eps2={field}"), embed_n3(agd, &z, &f)?)]
    })
}

/// Section parameters through the dictionary of the order.
fn parameters(agd: &Agd, s: &Section) -> Vec<(String, DiffPoly)> {
    if agd.oper().flavor() != Flavor::Sl {
        return Vec::new();
    }
    match agd.n() {
        2 => vec![("eps".into(), unembed_n2(s))],
        3 => {
            let (e1, e2) = unembed_n3(s);
            vec![("eps1".into(), e1), ("eps2".into(), e2)]
        }
        _ => Vec::new(),
    }
}

fn coefficient_label(oper: &Oper, j: usize) -> String {
    let w = oper.w(j);
    match w.as_field() {
        Some(_) => format!("{w}"),
        None => format!("W{j}"),
    }
}

fn bracket_sign_key(n: usize) -> &'static str {
    if n == 2 {
        "n2.bracket.sign"
    } else {
        "n3.bracket.sign"
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load(path: &Path, trunc: Option<i32>) -> Result<Env, CliError> {
    let script = parse_script(&read(path)?)?;
    evaluate(&script, trunc.unwrap_or(EXPRESSION_FLOOR).min(EXPRESSION_FLOOR))
}

struct Setup {
    agd: Agd,
    x: Section,
    y: Section,
    names: (String, String),
    inputs: Vec<(String, String)>,
}

fn section_setup(trunc: Option<i32>, a: &SectionArgs) -> Result<Setup, CliError> {
    if let Some(path) = &a.input {
        let env = load(path, trunc)?;
        let oper = match &a.oper {
            Some(name) => env.opers.iter().find(|o| &o.name == name),
            None => env.opers.first(),
        }
        .ok_or_else(|| CliError::Usage("the input declares no matching oper".into()))?;
        let agd = make_agd(oper.value.clone(), trunc)?;
        let n = agd.n();
        let x = Section::new(n, &env.section(&a.x)?.value)?;
        let y = match env.section(&a.y) {
            Ok(s) => Section::new(n, &s.value)?,
            Err(_) => Section::zero(&env.ring, n),
        };
        return Ok(Setup { agd, x, y, names: (a.x.clone(), a.y.clone()), inputs: env.inputs() });
    }
    check_order(a.n)?;
    let r = builtin_ring();
    let agd = make_agd(builtin_oper(&r, a.n), trunc)?;
    let (x, y) = if a.n == 2 {
        (embed_n2(&agd, &var(&r, "a"))?, embed_n2(&agd, &var(&r, "b"))?)
    } else {
        (embed_n3(&agd, &var(&r, "a"), &var(&r, "b"))?, embed_n3(&agd, &var(&r, "c"), &var(&r, "d"))?)
    };
    let inputs = vec![("L".into(), agd.oper().symbol().to_string()), ("X".into(), x.to_string()), ("Y".into(), y.to_string())];
    Ok(Setup { agd, x, y, names: ("X".into(), "Y".into()), inputs })
}

fn section_command(base: &str, a: &SectionArgs) -> String {
    match &a.input {
        Some(p) => command_name(base, &[("input", Some(p.display().to_string()))]),
        None => command_name(base, &[("n", Some(a.n.to_string()))]),
    }
}

fn echo(report: &mut Report, inputs: &[(String, String)]) {
    for (k, v) in inputs {
        report.input(k.clone(), v);
    }
}

fn agd_bracket(trunc: Option<i32>, a: &SectionArgs) -> Result<Report, CliError> {
    let s = section_setup(trunc, a)?;
    let mut rep = Report::new(&section_command("agd bracket", a));
    echo(&mut rep, &s.inputs);
    rep.constants(&["oper.convention", bracket_sign_key(s.agd.n()), "bracket.window"]);
    let (x, y) = &s.names;
    let (b, central) = s.agd.lie_bracket(&s.x, &s.y)?;
    let (back, _) = s.agd.lie_bracket(&s.y, &s.x)?;
    let label = format!("[{x},{y}]");
    rep.result(label.clone(), &b);
    for (p, v) in parameters(&s.agd, &b) {
        rep.result(format!("{label} {p}"), v);
    }
    rep.result("central term density", &central.value.density);
    let anti = b.checked_add(&back)?;
    if !anti.is_zero() {
        rep.witness(format!("{label} + [{y},{x}]"), &anti);
    }
    let mut ok = anti.is_zero();
    if s.agd.oper().coefficients().iter().all(|w| w.is_zero() || w.as_field().is_some()) {
        let hom = homomorphism_defect(&s.agd, &s.x, &s.y)?;
        rep.result("anchor homomorphism", hom.iter().all(|d| d.is_zero()));
        for (j, d) in hom.iter().enumerate() {
            if !d.is_zero() {
                rep.witness(format!("[delta_{x},delta_{y}] - delta_{label} on {}", coefficient_label(s.agd.oper(), j + 1)), d);
                ok = false;
            }
        }
    }
    if s.agd.oper().flavor() == Flavor::Sl {
        let res = s.agd.sop_residue(&b)?;
        if !res.is_zero() {
            rep.witness(format!("Res[{label},L]"), res);
            ok = false;
        }
    }
    rep.decide(ok);
    Ok(rep)
}

fn agd_anchor(trunc: Option<i32>, a: &SectionArgs) -> Result<Report, CliError> {
    let s = section_setup(trunc, a)?;
    let mut rep = Report::new(&section_command("agd anchor", a));
    echo(&mut rep, &s.inputs);
    rep.constants(&["oper.convention"]);
    let x = &s.names.0;
    let oper = s.agd.oper().clone();
    let vars = s.agd.anchor(&s.x)?;
    for (j, v) in vars.iter().enumerate() {
        rep.result(format!("delta_{x} {}", coefficient_label(&oper, j + 1)), v);
    }
    let top = s.agd.anchor_operator(&s.x)?.coeff(oper.order() - 1);
    let res = s.agd.sop_residue(&s.x)?.kappa_shift(oper.order());
    let mut ok = top == res;
    if !ok {
        rep.witness("top coefficient - k^N*Res", &top - &res);
    }
    if oper.flavor() == Flavor::Sl {
        if !vars[0].is_zero() {
            rep.witness(format!("k^{}*Res[{x},L]", oper.order()), &res);
            ok = false;
        }
        rep.decide(ok);
    } else if !ok {
        rep.decide(false);
    }
    Ok(rep)
}

fn agd_pair(trunc: Option<i32>, a: &SectionArgs) -> Result<Report, CliError> {
    let s = section_setup(trunc, a)?;
    let mut rep = Report::new(&section_command("agd pair", a));
    echo(&mut rep, &s.inputs);
    rep.constants(&["pairing.scale"]);
    let (x, y) = &s.names;
    let plus = s.agd.agd_bracket(&s.x, &s.y)?;
    let minus = s.agd.agd_bracket_minus_form(&s.x, &s.y)?;
    let paired = s.agd.pair(&s.x, &s.agd.anchor_operator(&s.y)?)?;
    let swapped = s.agd.agd_bracket(&s.y, &s.x)?;
    rep.result(format!("{{l_{x},l_{y}}} density"), &plus.density);
    rep.result(format!("-k*{{l_{x},l_{y}}} density"), &(&conformance::pairing_scale(&s.agd.oper().ring().clone()) * &plus.density));
    let checks = [
        ("plus form - minus form", &plus - &minus),
        ("plus form - <X, delta_Y L>", &plus - &paired),
        ("{l_X,l_Y} + {l_Y,l_X}", &plus + &swapped),
    ];
    let mut ok = true;
    for (label, d) in checks {
        if !d.is_zero() {
            rep.witness(label, &d.density);
            ok = false;
        }
    }
    rep.decide(ok);
    Ok(rep)
}

fn compare(rep: &mut Report, label: String, computed: &DiffPoly, printed: &DiffPoly) -> bool {
    rep.result(label.clone(), computed);
    if computed == printed {
        true
    } else {
        rep.witness(format!("{label} - printed"), computed - printed);
        false
    }
}

fn n3_verify(trunc: Option<i32>, control: Option<N3Control>) -> Result<Report, CliError> {
    let swapped = control.is_some();
    let r = builtin_ring();
    let agd = make_agd(builtin_oper(&r, 3), trunc)?;
    let mut rep = Report::new(&command_name("agd n3-verify", &[("control", control_name(control))]));
    rep.input("L", agd.oper().symbol());
    rep.constants(&["oper.convention", "n3.dictionary", "n3.bracket.sign", "bracket.window"]);
    let mut ok = true;
    for (t, (label, s)) in typed(&agd, "a", swapped)?.iter().enumerate() {
        let vars = agd.anchor(s)?;
        for (k, field) in ["T", "W"].iter().enumerate() {
            let printed = reference::formula(&r, reference::N3_ANCHOR[2 * t + k], "a")?;
            ok &= compare(&mut rep, format!("anchor {label} delta {field}"), &vars[k + 1], &printed);
        }
    }
    let (xa, xb) = (typed(&agd, "a", swapped)?, typed(&agd, "b", swapped)?);
    for (p, (i, j)) in [(0usize, 0usize), (0, 1), (1, 1)].into_iter().enumerate() {
        let (b, _) = agd.lie_bracket(&xa[i].1, &xb[j].1)?;
        let (e1, e2) = unembed_n3(&b);
        let (e1, e2) = if swapped { (e2, e1) } else { (e1, e2) };
        let (p1, p2) = reference::N3_BRACKETS[p];
        let pair = format!("[{},{}]", xa[i].0, xb[j].0);
        ok &= compare(&mut rep, format!("{pair} eps1"), &e1, &reference::formula(&r, p1, "")?);
        ok &= compare(&mut rep, format!("{pair} eps2"), &e2, &reference::formula(&r, p2, "")?);
    }
    rep.decide(ok);
    Ok(rep)
}

/// The ε1 part of Σ_cp ⌊⌊a,b⌋,c⌋ + λκ(ab′ − ba′)δ_c T over ε2-type triples.
fn anomaly_sum(agd: &Agd, lambda: &Q) -> Result<DiffPoly, CliError> {
    let r = agd.oper().ring().clone();
    let names = ["a", "b", "c"];
    let mut total = DiffPoly::zero(&r);
    for s in 0..3 {
        let (p, q, w) = (names[s], names[(s + 1) % 3], names[(s + 2) % 3]);
        let (sp, sq, sw) = (typed(agd, p, false)?[1].1.clone(), typed(agd, q, false)?[1].1.clone(), typed(agd, w, false)?[1].1.clone());
        let (pq, _) = agd.lie_bracket(&sp, &sq)?;
        let (outer, _) = agd.lie_bracket(&pq, &sw)?;
        let dt = agd.anchor(&sw)?[1].clone();
        let wr = (&(&var(&r, p) * &DiffPoly::var(&r, q, 1, 0)?) - &(&var(&r, q) * &DiffPoly::var(&r, p, 1, 0)?)).kappa_shift(1).scale(lambda);
        total = &(&total + &unembed_n3(&outer).0) + &(&wr * &dt);
    }
    Ok(total)
}

fn agd_jacobi(trunc: Option<i32>, n: usize, control: Option<JacobiControl>) -> Result<Report, CliError> {
    check_order(n)?;
    if control.is_some() && n != 3 {
        return Err(CliError::Usage("the printed-anomaly control needs --n 3".into()));
    }
    let r = builtin_ring();
    let agd = make_agd(builtin_oper(&r, n), trunc)?;
    let mut rep = Report::new(&command_name("agd jacobi", &[("n", Some(n.to_string())), ("control", control_name(control))]));
    rep.input("L", agd.oper().symbol());
    rep.constants(&["jacobi.variation", bracket_sign_key(n)]);
    let (xa, xb, xc) = (typed(&agd, "a", false)?, typed(&agd, "b", false)?, typed(&agd, "c", false)?);
    let mut ok = true;
    for (la, a) in &xa {
        for (lb, b) in &xb {
            for (lc, c) in &xc {
                let d = jacobi_defect(&agd, a, b, c)?;
                let label = format!("triple ({la}, {lb}, {lc})");
                rep.result(label.clone(), if d.is_zero() { "0".to_string() } else { d.to_string() });
                if !d.is_zero() {
                    for (p, v) in parameters(&agd, &d) {
                        rep.witness(format!("{label} {p}"), v);
                    }
                    ok = false;
                }
            }
        }
    }
    if n == 3 {
        let lambda = if control.is_some() { -Q::from_integer(1.into()) } else { qf(2, 3) };
        let sum = anomaly_sum(&agd, &lambda)?;
        rep.result("variation coefficient", conformance_text(&lambda));
        rep.result("eps1 anomaly sum", &sum);
        if !sum.is_zero() {
            rep.witness("eps1 anomaly sum", &sum);
            ok = false;
        }
    }
    rep.decide(ok);
    Ok(rep)
}

fn conformance_text(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn agd_cocycle(trunc: Option<i32>, n: usize, control: Option<CocycleControl>) -> Result<Report, CliError> {
    check_order(n)?;
    let r = builtin_ring();
    let agd = make_agd(builtin_oper(&r, n), trunc)?;
    let mut rep = Report::new(&command_name("agd cocycle", &[("n", Some(n.to_string())), ("control", control_name(control))]));
    rep.input("L", agd.oper().symbol());
    rep.constants(&["cocycle.coboundary", "homomorphism.order"]);
    let factors: Vec<DiffPoly> = match (n, control) {
        (_, Some(CocycleControl::NonClosed)) => vec![reference::formula(&r, "T^2", "")?],
        (2, None) => vec![reference::formula(&r, reference::N2_COCYCLE, "")?],
        _ => reference::N3_COCYCLE.iter().map(|f| reference::formula(&r, f, "")).collect::<Result<_, _>>()?,
    };
    for (k, f) in factors.iter().enumerate() {
        rep.input(format!("cocycle factor {}", k + 1), f);
    }
    let c = |x: &Section| -> agdoid_core::Result<Functional> {
        let ps = parameters(&agd, x);
        let mut d = DiffPoly::zero(&r);
        for (k, f) in factors.iter().enumerate() {
            d = &d + &(&ps[k].1 * f);
        }
        Ok(Functional::new(d))
    };
    let (xa, xb) = (typed(&agd, "a", false)?, typed(&agd, "b", false)?);
    let mut ok = true;
    for (la, a) in &xa {
        for (lb, b) in &xb {
            let d = cocycle_defect(&agd, &c, a, b)?;
            let label = format!("coboundary of c on ({la}, {lb})");
            rep.result(label.clone(), if d.is_zero() { "0".to_string() } else { d.density.to_string() });
            if !d.is_zero() {
                rep.witness(label, &d.density);
                ok = false;
            }
        }
    }
    let t = var(&r, "T");
    let f = Functional::new(&t * &t);
    let exact = |x: &Section| -> agdoid_core::Result<Functional> { Ok(Functional::new(agd.induced_action(x)?.apply(&f.density)?)) };
    let candidates = [Functional::new(t.clone()), Functional::new(&t * &t), Functional::new(&t * &DiffPoly::var(&r, "T", 2, 0)?)];
    let probes: Vec<Section> = xa.iter().chain(xb.iter()).map(|(_, s)| s.clone()).collect();
    match coboundary_primitive(&agd, &exact, &probes, &candidates)? {
        Some(l) => rep.result("primitive of D int(T^2) over (T, T^2, T*T[2,0])", l.iter().map(conformance_text).collect::<Vec<_>>().join(", ")),
        None => {
            rep.witness("D int(T^2) has no primitive", "0");
            ok = false;
        }
    }
    let exact_c = coboundary_primitive(&agd, &c, &probes, &candidates)?;
    rep.result("c is a coboundary of (T, T^2, T*T[2,0])", exact_c.is_some());
    rep.decide(ok);
    Ok(rep)
}

fn matrix_entries(rep: &mut Report, name: &str, m: &MatrixPoly) {
    for i in 0..m.size() {
        for j in 0..m.size() {
            rep.result(format!("{name}({},{})", i + 1, j + 1), m.get(i, j));
        }
    }
}

fn matrix_lift(trunc: Option<i32>, control: Option<LiftControl>) -> Result<Report, CliError> {
    let r = builtin_ring();
    let oper = builtin_oper(&r, 3);
    let agd = make_agd(oper.clone(), trunc)?;
    let mut rep = Report::new(&command_name("matrix lift", &[("control", control_name(control))]));
    rep.input("L", oper.symbol());
    rep.constants(&["n3.dictionary", "n3.bracket.sign"]);
    let z = DiffPoly::zero(&r);
    let params = |f: &str| [[var(&r, f), z.clone()], [z.clone(), var(&r, f)]];
    let label = |k: usize, f: &str| format!("eps{}={f}", k + 1);
    let mut ok = true;
    for (i, x) in params("a").iter().enumerate() {
        let lift = solve_oper_lift(&oper, x)?;
        let sx = embed_n3(&agd, &x[0], &x[1])?;
        let an = agd.anchor(&sx)?;
        if lift.variations != an {
            for (k, (p, q)) in lift.variations.iter().zip(&an).enumerate() {
                if p != q {
                    rep.witness(format!("lift({}) variation {} - anchor", label(i, "a"), k + 1), p - q);
                }
            }
            ok = false;
        }
        for (j, y) in params("b").iter().enumerate() {
            let m = matrix_bracket_oracle(&oper, x, y)?;
            let sy = embed_n3(&agd, &y[0], &y[1])?;
            let (e1, e2) = unembed_n3(&agd.lie_bracket(&sx, &sy)?.0);
            let pair = format!("[{},{}]", label(i, "a"), label(j, "b"));
            rep.result(format!("matrix {pair}"), format!("{}; {}", m[0], m[1]));
            for (k, (p, q)) in m.iter().zip([e1, e2].iter()).enumerate() {
                if p != q {
                    rep.witness(format!("matrix {pair} eps{} - algebroid", k + 1), p - q);
                    ok = false;
                }
            }
        }
    }
    let lift = solve_oper_lift(&oper, &[var(&r, "a"), var(&r, "b")])?;
    matrix_entries(&mut rep, "X", &lift.x);
    let printed = reference::n3_lift(&r, control.is_some())?;
    let diff = lift.x.checked_sub(&printed)?;
    for (i, j) in diff.support() {
        rep.witness(format!("X({},{}) - printed", i + 1, j + 1), diff.get(i, j));
        ok = false;
    }
    if !lift.x.is_traceless() {
        rep.witness("trace X", lift.x.trace());
        ok = false;
    }
    rep.decide(ok);
    Ok(rep)
}

fn w3_fields(r: &Ring) -> [DiffPoly; 4] {
    [var(r, "T"), var(r, "W"), var(r, "mu"), var(r, "rho")]
}

fn matrix_curvature() -> Result<Report, CliError> {
    let r = builtin_ring();
    let [t, w, mu, rho] = w3_fields(&r);
    let mut rep = Report::new("matrix curvature");
    rep.input("A", "-companion(L)");
    rep.input("Abar", "-abar(T, W, mu, rho)");
    let rep_w3 = verify_w3_curvature(&t, &w, &mu, &rho)?;
    matrix_entries(&mut rep, "F", &rep_w3.curvature);
    Ok(rep)
}

fn matrix_w3(control: Option<CurvatureControl>) -> Result<Report, CliError> {
    let r = builtin_ring();
    let [t, w, mu, rho] = w3_fields(&r);
    let mut rep = Report::new(&command_name("matrix w3-verify", &[("control", control_name(control))]));
    rep.constants(&["n3.xi.sign", "constraint.sign"]);
    let base = verify_w3_curvature(&t, &w, &mu, &rho)?;
    let curv = match control {
        None => {
            rep.input("Abar", "-abar(T, W, mu, rho)");
            base.curvature.clone()
        }
        Some(CurvatureControl::LiteralAbar) => {
            rep.input("Abar", "abar(T, W, mu, rho)");
            curvature(&-&oper_matrix(&Oper::sl3(&t, &w)), &abar_matrix(&t, &w, &mu, &rho)?)?
        }
    };
    rep.input("A", "-companion(L)");
    matrix_entries(&mut rep, "F", &curv);
    let diff = curv.checked_sub(&base.expected)?;
    for (i, j) in diff.support() {
        rep.witness(format!("F({},{}) - expected", i + 1, j + 1), diff.get(i, j));
    }
    let support: Vec<String> = curv.support().iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
    rep.result("nonzero entries", support.join(" "));
    rep.decide(diff.is_zero() && curv.support() == vec![(2, 0), (2, 1)]);
    Ok(rep)
}

struct Phase {
    r: Ring,
    agd: Agd,
    xi: XiField,
}

fn phase_setup(trunc: Option<i32>, n: usize) -> Result<Phase, CliError> {
    check_order(n)?;
    let r = builtin_ring();
    let agd = make_agd(builtin_oper(&r, n), trunc)?;
    let xi = if n == 2 { XiField::n2(&agd, &var(&r, "mu"))? } else { XiField::n3(&agd, &var(&r, "mu"), &var(&r, "rho"))? };
    Ok(Phase { r, agd, xi })
}

fn xi_sign_key(n: usize) -> &'static str {
    if n == 2 {
        "n2.xi.sign"
    } else {
        "n3.xi.sign"
    }
}

/// The order-three constraints with the printed misprints restored.
fn printed_n3_constraints() -> [String; 2] {
    [
        reference::N3_CONSTRAINTS[0].replace("- 2*k*T*mu[1,0]", "- 2*k*T[1,0]*mu"),
        reference::N3_CONSTRAINTS[1]
            .replace("- 2/3*k^5*rho[5,0]", "- 2/5*k^5*rho[5,0]")
            .replace("- 2*k^2*W[1,0]*rho[1,0]", "- 2*k*W[1,0]*rho[1,0]"),
    ]
}

fn phase_constraint(trunc: Option<i32>, n: usize, control: Option<ConstraintControl>) -> Result<Report, CliError> {
    if control.is_some() && n != 3 {
        return Err(CliError::Usage("the printed control needs --n 3".into()));
    }
    let p = phase_setup(trunc, n)?;
    let mut rep = Report::new(&command_name("phase constraint", &[("n", Some(n.to_string())), ("control", control_name(control))]));
    rep.input("L", p.agd.oper().symbol());
    rep.input("xi", p.xi.symbol());
    rep.constants(&[xi_sign_key(n), "constraint.sign"]);
    let cs = constraint(&p.agd, &p.xi)?;
    let printed: Vec<String> = match (n, control) {
        (2, _) => vec![reference::N2_CONSTRAINT.to_string()],
        (_, None) => reference::N3_CONSTRAINTS.iter().map(|s| s.to_string()).collect(),
        (_, Some(_)) => printed_n3_constraints().to_vec(),
    };
    let mut ok = true;
    for (k, text) in printed.iter().enumerate() {
        let label = if n == 2 { "F".to_string() } else { format!("F{}", k + 1) };
        ok &= compare(&mut rep, label, cs.get(k + 2), &reference::formula(&p.r, text, "")?);
    }
    rep.decide(ok);
    Ok(rep)
}

fn phase_compat(trunc: Option<i32>, n: usize, control: Option<CompatControl>) -> Result<Report, CliError> {
    let p = phase_setup(trunc, n)?;
    let mut rep = Report::new(&command_name("phase compat", &[("n", Some(n.to_string())), ("control", control_name(control))]));
    rep.input("L", p.agd.oper().symbol());
    rep.input("xi", p.xi.symbol());
    rep.constants(&["linear.system", xi_sign_key(n)]);
    let (a, a_star) = dbar_deformation(&p.agd, &p.xi)?;
    let (b, compat) = match control {
        None => (-&a_star, compatibility_check(&p.agd, &p.xi)?),
        Some(CompatControl::LiteralLax) => (a.clone(), compatibility_with(&p.agd, &p.xi, &a)?),
    };
    rep.result("B", &b);
    rep.result("off-shell remainder", &compat.off_shell);
    rep.result("off-shell remainder is the constraint operator", compat.off_shell_is_constraint);
    rep.result("on-shell remainder", &compat.on_shell);
    for (k, c) in compat.on_shell.coeffs() {
        rep.witness(format!("on-shell remainder at Del^{k}"), c);
    }
    rep.decide(compat.holds() && compat.off_shell_is_constraint);
    Ok(rep)
}

fn phase_homomorphism(trunc: Option<i32>, n: usize, control: Option<HomomorphismControl>) -> Result<Report, CliError> {
    let p = phase_setup(trunc, n)?;
    let mut rep = Report::new(&command_name("phase homomorphism", &[("n", Some(n.to_string())), ("control", control_name(control))]));
    rep.input("L", p.agd.oper().symbol());
    rep.input("xi", p.xi.symbol());
    rep.constants(&["hamiltonian.map", "hamiltonian.scale", "poisson.sign"]);
    let names: &[(&str, &str)] = if n == 2 { &[("T", "mu")] } else { &[("T", "mu"), ("W", "rho")] };
    let pairs = canonical_pairs(&p.r, names)?;
    let sign = if control.is_some() { Q::from_integer((-1).into()) } else { Q::from_integer(1.into()) };
    let mut ok = true;
    for (la, x) in typed(&p.agd, "a", false)? {
        for (lb, y) in typed(&p.agd, "b", false)? {
            let hx = hamiltonian(&p.agd, &p.xi, &x)?;
            let hy = hamiltonian(&p.agd, &p.xi, &y)?;
            let (bxy, _) = p.agd.lie_bracket(&x, &y)?;
            let hb = hamiltonian(&p.agd, &p.xi, &bxy)?;
            let lhs = canonical_bracket(&hx, &hy, &pairs)?;
            let label = format!("{{h({la}),h({lb})}}");
            rep.result(format!("{label} density"), &lhs.density);
            let d = &lhs + &hb.scale(&sign);
            if !d.is_zero() {
                rep.witness(format!("{label} + h([{la},{lb}])"), &d.density);
                ok = false;
            }
        }
    }
    rep.decide(ok);
    Ok(rep)
}

fn brst_omega(n: usize) -> Result<Report, CliError> {
    check_order(n)?;
    let charge = build_omega(n)?;
    let mut rep = Report::new(&command_name("brst omega", &[("n", Some(n.to_string()))]));
    rep.constants(&["brst.quadratic", "poisson.sign", xi_sign_key(n)]);
    rep.result("ghost number", charge.gh);
    rep.result("linear part", &charge.linear);
    rep.result("quadratic part", &charge.quadratic);
    rep.result("Omega density", &charge.omega.density);
    Ok(rep)
}

fn brst_check(n: usize, control: Option<BrstControl>, index: Option<usize>) -> Result<Report, CliError> {
    check_order(n)?;
    if index.is_some() && control.is_none() {
        return Err(CliError::Usage("--index is only used with --control corrupt".into()));
    }
    let clean = build_omega(n)?;
    let index_text = control.map(|_| index.unwrap_or(DEFAULT_CORRUPT_INDEX).to_string());
    let mut rep = Report::new(&command_name(
        "brst check",
        &[("n", Some(n.to_string())), ("control", control_name(control)), ("index", index_text)],
    ));
    rep.constants(&["brst.quadratic", "poisson.sign"]);
    let charge = match control {
        None => clean,
        Some(_) => clean.corrupted(index.unwrap_or(DEFAULT_CORRUPT_INDEX)),
    };
    rep.input("Omega", &charge.omega.density);
    let nil = nilpotency_check(&charge)?;
    rep.result("generic bracket agrees", nil.generic_agrees);
    rep.result("{Omega,Omega} density", &nil.square.density);
    let ring = charge.pack().ring().clone();
    for b in &nil.blocks {
        rep.result(format!("block {} (P-degree {})", b.name, b.momentum_degree), &b.value.density);
        for (f, w) in &b.witnesses {
            let var = f.map(|id| ring.symbol(id).name.clone()).unwrap_or_else(|| "constant".into());
            rep.witness(format!("block {} E_{var}", b.name), w);
        }
    }
    rep.decide(nil.holds());
    Ok(rep)
}

fn poisson_verify(path: &Path, probes: usize, seed: u64) -> Result<Report, CliError> {
    let env = load(path, None)?;
    let n = env.dim.ok_or_else(|| CliError::Usage("the bivector script needs `dim n;`".into()))?;
    if env.ring.len() != n {
        return Err(CliError::Usage("a bivector script declares only `dim` and `pi` entries".into()));
    }
    let mut upper = Vec::new();
    for (j, k, f, _) in &env.bivector {
        match j.cmp(k) {
            std::cmp::Ordering::Less => upper.push((j - 1, k - 1, f.clone())),
            std::cmp::Ordering::Greater => upper.push((k - 1, j - 1, -f)),
            std::cmp::Ordering::Equal => return Err(CliError::Usage(format!("diagonal entry pi {j} {j} of an antisymmetric bivector"))),
        }
    }
    let pi = PolyBivector::from_upper(&env.ring, &upper)?;
    let mut rep = Report::new(&command_name("poisson verify", &[("bivector", Some(path.display().to_string())), ("probes", Some(probes.to_string())), ("seed", Some(seed.to_string()))]));
    rep.input("dim", n);
    echo(&mut rep, &env.inputs());
    rep.constants(&["poisson.sign"]);
    let sections = random_sections(&env.ring, probes, 2, seed);
    let x = |j: usize| DiffPoly::var(&env.ring, &format!("x{j}"), 0, 0).expect("coordinate");
    let mut functions: Vec<DiffPoly> = (1..=n).map(x).collect();
    functions.push(&x(1) * &x(n));
    let fd = verify_algebroid_fd(&pi, &sections, &functions)?;
    for a in &fd.axioms {
        rep.result(format!("axiom {}", a.name), if a.holds { "holds" } else { "fails" });
        if let Some(c) = &a.counterexample {
            rep.witness(a.name, c);
        }
    }
    rep.decide(fd.holds());
    Ok(rep)
}

fn conformance_table() -> Report {
    let mut rep = Report::new("conformance table");
    let keys: Vec<&str> = conformance::TABLE.iter().map(|c| c.key).collect();
    rep.constants(&keys);
    for c in conformance::TABLE {
        rep.result(c.key, format!("{}; {}", c.value, c.meaning));
    }
    rep
}
