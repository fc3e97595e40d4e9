//! Expression and declaration grammar with a canonical printer.

use std::fmt;

use agdoid_core::symjet::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative rational literal.
    Num(Q),
    Kappa,
    Del,
    Jet { name: String, dz: u16, dzbar: u16 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn jet(name: &str, dz: u16, dzbar: u16) -> Expr {
        Expr::Jet { name: name.to_string(), dz, dzbar }
    }

    /// Field names in order of first appearance.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Jet { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Expr::Num(_) | Expr::Kappa | Expr::Del => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Semi,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l0, col: c0 });
            advance(1, &mut i);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            } else if i < chars.len() && chars[i] == '/' {
                return Err(ParseError { line: l0, col: c0 + (i - start), message: "rational needs a denominator".into() });
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Num(s), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        return Err(ParseError { line: l0, col: c0, message: format!("unexpected character `{c}`") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

pub const RESERVED: &[&str] = &["k", "Del", "field", "oper", "section", "weight", "parity", "even", "odd", "ghost", "dim", "pi"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    /// Declared names; `None` accepts any identifier.
    known: Option<&'a [String]>,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: at.line, col: at.col, message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            self.error(&t, format!("expected {tok}, found {}", t.tok))
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match &t.tok {
            Tok::Num(s) if !s.contains('/') => match s.parse::<i64>() {
                Ok(v) => Ok(if neg { -v } else { v }),
                Err(_) => self.error(&t, "integer out of range"),
            },
            other => self.error(&t, format!("expected an integer, found {other}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.peek().tok == Tok::Minus {
            self.next();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while self.peek().tok == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let at = self.peek().clone();
            let e = self.integer()?;
            let e = i32::try_from(e).or_else(|_| self.error(&at, "exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(s) => match s.parse::<Q>() {
                Ok(v) => Ok(Expr::Num(v)),
                Err(_) => self.error(&t, "zero denominator"),
            },
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) if s == "k" => Ok(Expr::Kappa),
            Tok::Ident(s) if s == "Del" => Ok(Expr::Del),
            Tok::Ident(s) => {
                if RESERVED.contains(&s.as_str()) {
                    return self.error(&t, format!("`{s}` is a keyword"));
                }
                if let Some(known) = self.known {
                    if !known.iter().any(|k| k == s) {
                        return self.error(&t, format!("unknown identifier `{s}`"));
                    }
                }
                let (mut dz, mut dzbar) = (0u16, 0u16);
                if self.peek().tok == Tok::LBracket {
                    self.next();
                    let at = self.peek().clone();
                    dz = u16::try_from(self.integer()?).or_else(|_| self.error(&at, "derivative order must be a small nonnegative integer"))?;
                    self.expect(Tok::Comma)?;
                    let at = self.peek().clone();
                    dzbar = u16::try_from(self.integer()?).or_else(|_| self.error(&at, "derivative order must be a small nonnegative integer"))?;
                    self.expect(Tok::RBracket)?;
                }
                Ok(Expr::Jet { name: s.clone(), dz, dzbar })
            }
            other => self.error(&t, format!("expected an expression, found {other}")),
        }
    }
}

/// Parses one complete expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, known: None };
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::End {
        return p.error(&t, format!("unexpected {} after the expression", t.tok));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    pub weight: Option<i32>,
    pub odd: bool,
    pub ghost: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Field(FieldDecl),
    Oper { name: String, value: Expr, line: usize },
    Section { name: String, value: Expr, line: usize },
    Dim(usize),
    Bivector { j: usize, k: usize, value: Expr, line: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl Script {
    pub fn fields(&self) -> Vec<&FieldDecl> {
        self.statements.iter().filter_map(|s| if let Statement::Field(f) = s { Some(f) } else { None }).collect()
    }
}

/// Parses declarations separated by `;`. Identifiers must be declared before use; `dim n;`
/// declares the coordinates x1..xn.
pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let toks = lex(text)?;
    let mut names: Vec<String> = Vec::new();
    let mut defined: Vec<String> = Vec::new();
    let mut statements = Vec::new();
    let mut pos = 0usize;
    loop {
        let known = names.clone();
        let mut p = Parser { toks: toks.clone(), pos, known: Some(&known) };
        let head = p.next();
        let kw = match &head.tok {
            Tok::End => break,
            Tok::Ident(s) => s.clone(),
            other => return p.error(&head, format!("expected a declaration, found {other}")),
        };
        let ident = |p: &mut Parser| -> Result<(String, Spanned), ParseError> {
            let t = p.next();
            match &t.tok {
                Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => Ok((s.clone(), t)),
                other => p.error(&t, format!("expected a name, found {other}")),
            }
        };
        match kw.as_str() {
            "field" => {
                let (name, at) = ident(&mut p)?;
                if names.contains(&name) {
                    return p.error(&at, format!("`{name}` declared twice"));
                }
                let mut decl = FieldDecl { name: name.clone(), weight: None, odd: false, ghost: 0 };
                loop {
                    let t = p.peek().clone();
                    match &t.tok {
                        Tok::Ident(s) if s == "weight" => {
                            p.next();
                            let at = p.peek().clone();
                            decl.weight = Some(i32::try_from(p.integer()?).or_else(|_| p.error(&at, "weight out of range"))?);
                        }
                        Tok::Ident(s) if s == "ghost" => {
                            p.next();
                            let at = p.peek().clone();
                            decl.ghost = i32::try_from(p.integer()?).or_else(|_| p.error(&at, "ghost number out of range"))?;
                        }
                        Tok::Ident(s) if s == "parity" => {
                            p.next();
                            let v = p.next();
                            decl.odd = match &v.tok {
                                Tok::Ident(s) if s == "even" => false,
                                Tok::Ident(s) if s == "odd" => true,
                                other => return p.error(&v, format!("expected `even` or `odd`, found {other}")),
                            };
                        }
                        _ => break,
                    }
                }
                names.push(name);
                statements.push(Statement::Field(decl));
            }
            "oper" | "section" => {
                let (name, at) = ident(&mut p)?;
                if defined.contains(&name) || names.contains(&name) {
                    return p.error(&at, format!("`{name}` declared twice"));
                }
                p.expect(Tok::Eq)?;
                let value = p.expr()?;
                defined.push(name.clone());
                statements.push(if kw == "oper" {
                    Statement::Oper { name, value, line: head.line }
                } else {
                    Statement::Section { name, value, line: head.line }
                });
            }
            "dim" => {
                let at = p.peek().clone();
                let n = p.integer()?;
                if !(1..=16).contains(&n) || !names.is_empty() {
                    return p.error(&at, "`dim` takes 1..16 and must precede other declarations");
                }
                for j in 1..=n {
                    names.push(format!("x{j}"));
                }
                statements.push(Statement::Dim(n as usize));
            }
            "pi" => {
                let at = p.peek().clone();
                let (j, k) = (p.integer()?, p.integer()?);
                if j < 1 || k < 1 {
                    return p.error(&at, "bivector indices start at 1");
                }
                p.expect(Tok::Eq)?;
                let value = p.expr()?;
                statements.push(Statement::Bivector { j: j as usize, k: k as usize, value, line: head.line });
            }
            other => return p.error(&head, format!("unknown declaration `{other}`")),
        }
        p.expect(Tok::Semi)?;
        pos = p.pos;
    }
    Ok(Script { statements })
}

/// Canonical text.
pub fn print(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(e, &mut s);
    s
}

fn is_sum(e: &Expr) -> bool {
    matches!(e, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..))
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_expr(a, out);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_wrapped(b, is_sum(b), out);
        }
        Expr::Neg(a) => {
            out.push('-');
            write_wrapped(a, is_sum(a), out);
        }
        Expr::Mul(a, b) => {
            write_wrapped(a, is_sum(a), out);
            out.push('*');
            write_wrapped(b, is_sum(b) || matches!(**b, Expr::Mul(..)), out);
        }
        Expr::Pow(a, n) => {
            let atomic = match &**a {
                Expr::Num(q) => q.is_integer(),
                Expr::Kappa | Expr::Del | Expr::Jet { .. } => true,
                _ => false,
            };
            write_wrapped(a, !atomic, out);
            out.push_str(&format!("^{n}"));
        }
        Expr::Num(q) => {
            if q.is_integer() {
                out.push_str(&q.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", q.numer(), q.denom()));
            }
        }
        Expr::Kappa => out.push('k'),
        Expr::Del => out.push_str("Del"),
        Expr::Jet { name, dz, dzbar } => {
            out.push_str(name);
            if *dz != 0 || *dzbar != 0 {
                out.push_str(&format!("[{dz},{dzbar}]"));
            }
        }
    }
}

fn write_wrapped(e: &Expr, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}
