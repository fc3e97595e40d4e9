//! Evaluation of parsed expressions and scripts into engine objects.

use agdoid_core::psido::{Convention, Flavor, Oper, PsiSymbol, EXACT};
use agdoid_core::symjet::{DiffPoly, FieldSymbol, Parity, Ring};

use crate::grammar::{print, Expr, Script, Statement};
use crate::CliError;

fn eval_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Eval { line, message: message.into() }
}

/// The ring declared by a script; `dim n` contributes x1..xn.
pub fn ring_of(script: &Script) -> Result<Ring, CliError> {
    let mut fields = Vec::new();
    for s in &script.statements {
        match s {
            Statement::Field(f) => {
                if f.ghost % 2 != 0 && !f.odd {
                    return Err(CliError::Usage(format!(
                        "parity misuse: `{}` has odd ghost number {} but even parity",
                        f.name, f.ghost
                    )));
                }
                if f.ghost % 2 == 0 && f.odd && f.ghost != 0 {
                    return Err(CliError::Usage(format!(
                        "parity misuse: `{}` has even ghost number {} but odd parity",
                        f.name, f.ghost
                    )));
                }
                let mut sym = if f.odd { FieldSymbol::odd(&f.name) } else { FieldSymbol::even(&f.name) };
                if let Some(w) = f.weight {
                    sym = sym.weight(w);
                }
                fields.push(sym.ghost(f.ghost));
            }
            Statement::Dim(n) => fields.extend((1..=*n).map(|j| FieldSymbol::even(&format!("x{j}")))),
            _ => {}
        }
    }
    Ok(Ring::new(fields)?)
}

/// A symbol for an expression. Products with a differential left factor are exact; all others
/// are kept down to `floor`.
pub fn symbol(ring: &Ring, e: &Expr, floor: i32) -> Result<PsiSymbol, CliError> {
    Ok(match e {
        Expr::Num(c) => PsiSymbol::scalar(DiffPoly::constant(ring, c.clone())),
        Expr::Kappa => PsiSymbol::scalar(DiffPoly::kappa(ring, 1)),
        Expr::Del => PsiSymbol::del(ring, 1),
        Expr::Jet { name, dz, dzbar } => PsiSymbol::scalar(DiffPoly::var(ring, name, *dz, *dzbar)?),
        Expr::Neg(a) => -&symbol(ring, a, floor)?,
        Expr::Add(a, b) => symbol(ring, a, floor)?.checked_add(&symbol(ring, b, floor)?)?,
        Expr::Sub(a, b) => symbol(ring, a, floor)?.checked_add(&-&symbol(ring, b, floor)?)?,
        Expr::Mul(a, b) => product(&symbol(ring, a, floor)?, &symbol(ring, b, floor)?, floor)?,
        Expr::Pow(a, n) => match &**a {
            Expr::Del => PsiSymbol::del(ring, *n),
            Expr::Kappa => PsiSymbol::scalar(DiffPoly::kappa(ring, *n)),
            _ if *n < 0 => {
                return Err(CliError::Usage(format!("negative exponent on `{}`; only k and Del invert", print(a))))
            }
            _ => {
                let base = symbol(ring, a, floor)?;
                let mut out = PsiSymbol::scalar(DiffPoly::one(ring));
                for _ in 0..*n {
                    out = product(&out, &base, floor)?;
                }
                out
            }
        },
    })
}

fn product(a: &PsiSymbol, b: &PsiSymbol, floor: i32) -> Result<PsiSymbol, CliError> {
    let f = if a.is_differential() && a.is_exact() && b.is_exact() { EXACT } else { floor.max(a.product_floor(b)) };
    Ok(a.compose(b, f)?)
}

/// A function-valued expression: a symbol with only a degree-zero coefficient.
pub fn function(ring: &Ring, e: &Expr, floor: i32) -> Result<DiffPoly, CliError> {
    let s = symbol(ring, e, floor)?;
    if s.coeffs().any(|(k, _)| k != 0) {
        return Err(CliError::Usage(format!("`{}` is an operator where a function was expected", print(e))));
    }
    Ok(s.coeff(0))
}

fn even(s: &PsiSymbol, what: &str, line: usize) -> Result<(), CliError> {
    match s.parity() {
        Some(Parity::Even) => Ok(()),
        Some(Parity::Odd) => Err(eval_error(line, format!("parity misuse: {what} is odd"))),
        None => Err(eval_error(line, format!("parity misuse: {what} mixes even and odd terms"))),
    }
}

/// Reads W_j off κ^N∂^N − Σ W_jκ^{N−j}∂^{N−j}; SL when W_1 = 0.
pub fn oper_from_symbol(l: &PsiSymbol) -> Result<Oper, String> {
    let n = match l.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err("an oper has positive order".into()),
    };
    if !l.is_differential() || !l.is_exact() {
        return Err("an oper is a differential operator".into());
    }
    let ring = l.ring();
    if l.coeff(n) != DiffPoly::kappa(ring, n) {
        return Err(format!("leading coefficient is `{}`, expected `{}`", l.coeff(n), DiffPoly::kappa(ring, n)));
    }
    let w: Vec<DiffPoly> = (1..=n).map(|j| -&l.coeff(n - j).kappa_shift(-(n - j))).collect();
    let flavor = if w[0].is_zero() { Flavor::Sl } else { Flavor::Gl };
    let oper = Oper::new(flavor, Convention::Minus, w).map_err(|e| e.to_string())?;
    if !(&oper.symbol() - l).is_zero() {
        return Err("symbol does not round-trip through the oper coefficients".into());
    }
    Ok(oper)
}

/// A named declaration with its canonical text.
#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub text: String,
    pub value: T,
}

/// Everything a script declares, evaluated over its ring.
#[derive(Clone, Debug)]
pub struct Env {
    pub ring: Ring,
    pub opers: Vec<Named<Oper>>,
    pub sections: Vec<Named<PsiSymbol>>,
    pub dim: Option<usize>,
    pub bivector: Vec<(usize, usize, DiffPoly, String)>,
}

impl Env {
    pub fn section(&self, name: &str) -> Result<&Named<PsiSymbol>, CliError> {
        self.sections.iter().find(|s| s.name == name).ok_or_else(|| CliError::Usage(format!("no section `{name}` in the input")))
    }

    pub fn inputs(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self.opers.iter().map(|o| (o.name.clone(), o.text.clone())).collect();
        out.extend(self.sections.iter().map(|s| (s.name.clone(), s.text.clone())));
        out.extend(self.bivector.iter().map(|(j, k, _, t)| (format!("pi {j} {k}"), t.clone())));
        out
    }
}

pub fn evaluate(script: &Script, floor: i32) -> Result<Env, CliError> {
    let ring = ring_of(script)?;
    let mut env = Env { ring: ring.clone(), opers: Vec::new(), sections: Vec::new(), dim: None, bivector: Vec::new() };
    for s in &script.statements {
        match s {
            Statement::Field(_) => {}
            Statement::Dim(n) => env.dim = Some(*n),
            Statement::Oper { name, value, line } => {
                let sym = symbol(&ring, value, floor).map_err(|e| at_line(e, *line))?;
                even(&sym, &format!("oper `{name}`"), *line)?;
                let oper = oper_from_symbol(&sym).map_err(|m| eval_error(*line, format!("oper `{name}`: {m}")))?;
                env.opers.push(Named { name: name.clone(), text: print(value), value: oper });
            }
            Statement::Section { name, value, line } => {
                let sym = symbol(&ring, value, floor).map_err(|e| at_line(e, *line))?;
                even(&sym, &format!("section `{name}`"), *line)?;
                env.sections.push(Named { name: name.clone(), text: print(value), value: sym });
            }
            Statement::Bivector { j, k, value, line } => {
                let f = function(&ring, value, floor).map_err(|e| at_line(e, *line))?;
                let n = env.dim.ok_or_else(|| eval_error(*line, "`pi` needs a preceding `dim`"))?;
                if *j > n || *k > n {
                    return Err(eval_error(*line, format!("bivector index outside 1..{n}")));
                }
                env.bivector.push((*j, *k, f, print(value)));
            }
        }
    }
    Ok(env)
}

fn at_line(e: CliError, line: usize) -> CliError {
    match e {
        CliError::Eval { .. } => e,
        other => eval_error(line, other.to_string()),
    }
}
