//! Structured reports and their text, JSON and LaTeX renderings.

use std::fmt::Write;

use serde::Serialize;

use agdoid_core::agd::conformance;

use crate::grammar::{parse, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Computed,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Fails => 1,
            Verdict::Holds | Verdict::Computed => 0,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Computed => "computed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantEntry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub density: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Entry>,
    pub conformance_constants: Vec<ConstantEntry>,
    pub verdict: Verdict,
    pub results: Vec<Entry>,
    pub witnesses: Vec<Witness>,
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            conformance_constants: Vec::new(),
            verdict: Verdict::Computed,
            results: Vec::new(),
            witnesses: Vec::new(),
            timing: None,
        }
    }

    pub fn input(&mut self, label: impl Into<String>, value: impl ToString) {
        self.inputs.push(Entry { label: label.into(), value: value.to_string() });
    }

    pub fn result(&mut self, label: impl Into<String>, value: impl ToString) {
        self.results.push(Entry { label: label.into(), value: value.to_string() });
    }

    pub fn witness(&mut self, label: impl Into<String>, density: impl ToString) {
        self.witnesses.push(Witness { label: label.into(), density: density.to_string() });
    }

    /// Records frozen constants by key; unknown keys are a programming error.
    pub fn constants(&mut self, keys: &[&str]) {
        for k in keys {
            let c = conformance::lookup(k).unwrap_or_else(|| panic!("no conformance constant `{k}`"));
            self.conformance_constants.push(ConstantEntry { key: c.key.to_string(), value: c.value.to_string() });
        }
    }

    /// Holds when `ok`, fails otherwise.
    pub fn decide(&mut self, ok: bool) {
        self.verdict = if ok { Verdict::Holds } else { Verdict::Fails };
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Latex => self.latex(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for e in &self.inputs {
            let _ = writeln!(s, "input {} = {}", e.label, e.value);
        }
        for c in &self.conformance_constants {
            let _ = writeln!(s, "constant {} = {}", c.key, c.value);
        }
        for e in &self.results {
            let _ = writeln!(s, "{} = {}", e.label, e.value);
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "witness {} = {}", w.label, w.density);
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(s, "timing: {:.3} ms", t.millis);
        }
        let _ = writeln!(s, "verdict: {}", self.verdict.word());
        s
    }

    fn latex(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "% {}", self.command);
        let _ = writeln!(s, "\\begin{{align*}}");
        let rows: Vec<String> = self
            .inputs
            .iter()
            .chain(self.results.iter())
            .map(|e| format!("{} &= {}", latex_label(&e.label), latex_value(&e.value)))
            .chain(self.witnesses.iter().map(|w| format!("{} &= {}", latex_label(&w.label), latex_value(&w.density))))
            .collect();
        let _ = writeln!(s, "{}", rows.join(" \\\\\n"));
        let _ = writeln!(s, "\\end{{align*}}");
        let _ = writeln!(s, "% verdict: {}", self.verdict.word());
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

fn latex_label(label: &str) -> String {
    format!("\\text{{{}}}", label.replace('_', "\\_").replace('{', "\\{").replace('}', "\\}"))
}

/// LaTeX for a canonical value; text that is not an expression is set verbatim.
pub fn latex_value(value: &str) -> String {
    match parse(value) {
        Ok(e) => latex(&e),
        Err(_) => format!("\\text{{{}}}", value.replace('_', "\\_")),
    }
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "lambda", "mu", "nu", "xi", "pi", "rho",
    "sigma", "tau", "phi", "chi", "psi", "omega",
];

fn latex_name(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (stem, index) = name.split_at(split);
    let stem = match stem {
        "eps" => "\\epsilon".to_string(),
        s if GREEK.contains(&s) => format!("\\{s}"),
        s if s.len() > 1 => format!("\\mathrm{{{}}}", s.replace('_', "\\_")),
        s => s.to_string(),
    };
    if index.is_empty() {
        stem
    } else {
        format!("{stem}_{{{index}}}")
    }
}

fn latex_jet(name: &str, dz: u16, dzbar: u16) -> String {
    let base = latex_name(name);
    let primed = match dz {
        0 => base,
        1..=3 => format!("{base}{}", "'".repeat(dz as usize)),
        m => format!("{base}^{{({m})}}"),
    };
    match dzbar {
        0 => primed,
        1 => format!("\\bar\\partial {primed}"),
        n => format!("\\bar\\partial^{{{n}}} {primed}"),
    }
}

fn is_sum(e: &Expr) -> bool {
    matches!(e, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..))
}

pub fn latex(e: &Expr) -> String {
    match e {
        Expr::Num(q) => {
            if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
            }
        }
        Expr::Kappa => "\\kappa".into(),
        Expr::Del => "\\partial".into(),
        Expr::Jet { name, dz, dzbar } => latex_jet(name, *dz, *dzbar),
        Expr::Neg(a) => format!("-{}", wrap(a, is_sum(a))),
        Expr::Add(a, b) => format!("{} + {}", latex(a), wrap(b, is_sum(b))),
        Expr::Sub(a, b) => format!("{} - {}", latex(a), wrap(b, is_sum(b))),
        Expr::Mul(a, b) => format!("{} {}", wrap(a, is_sum(a)), wrap(b, is_sum(b))),
        Expr::Pow(a, n) => {
            let atomic = match &**a {
                Expr::Kappa | Expr::Del => true,
                Expr::Jet { dz, dzbar, .. } => *dz == 0 && *dzbar == 0,
                Expr::Num(q) => q.is_integer(),
                _ => false,
            };
            format!("{}^{{{n}}}", wrap(a, !atomic))
        }
    }
}

fn wrap(e: &Expr, paren: bool) -> String {
    if paren {
        format!("\\left({}\\right)", latex(e))
    } else {
        latex(e)
    }
}
