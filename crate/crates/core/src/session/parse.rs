use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::lab::{arity, check_names, needs_base, SUITE_NAMES};
use crate::linalg::Mat;
use crate::module::FpModule;
use crate::ring::{ideal_of, parse_elem, Ideal, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    Gamma,
    Lambda,
    D,
    F,
}

impl Functor {
    pub fn keyword(self) -> &'static str {
        match self {
            Functor::Gamma => "gamma",
            Functor::Lambda => "lambda",
            Functor::D => "D",
            Functor::F => "F",
        }
    }
}

/// Per-command overrides of the session options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub degree: Option<u32>,
    pub kmax: Option<u32>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Limit { functor: Functor, ideal: String, module: String },
    Ext { degree: usize, left: String, right: String },
    Tor { degree: usize, left: String, right: String },
    LocalCohomology { degree: usize, ideal: String, module: String },
    LocalHomology { degree: usize, ideal: String, module: String },
    Dims { ideal: String, modules: Vec<String> },
    Reduced { ideal: String, module: String },
    Coreduced { ideal: String, module: String },
    Check { name: String, ideal: String, modules: Vec<String>, over: Option<String> },
    Suite { name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSource {
    Free(usize),
    Coker,
    Quotient(Ideal),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ring { name: String, ring: Ring },
    Ideal { name: String, ring: String, ideal: Ideal },
    Module { name: String, ring: String, source: ModuleSource, module: FpModule },
    Command { command: Command, flags: Flags },
}

/// A parsed session. Equality ignores comments and line positions.
#[derive(Clone, Debug)]
pub struct Session {
    pub statements: Vec<Statement>,
    pub lines: Vec<usize>,
}

impl PartialEq for Session {
    fn eq(&self, other: &Session) -> bool {
        self.statements == other.statements
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    text: String,
    column: usize,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if ch == '[' || ch == '(' {
            let (open, close) = if ch == '[' { ('[', ']') } else { ('(', ')') };
            let mut depth = 0;
            while i < chars.len() {
                if chars[i] == open {
                    depth += 1;
                } else if chars[i] == close {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                i += 1;
            }
            if i == chars.len() {
                return Err(ParseError {
                    line: line_no,
                    column: start + 1,
                    message: format!("unbalanced `{open}`"),
                });
            }
            i += 1;
        } else {
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
        }
        let text: String = chars[start..i].iter().filter(|c| !c.is_whitespace()).collect();
        out.push(Token { text, column: start + 1 });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ring,
    Ideal,
    Module,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
        })
    }
}

#[derive(Default)]
struct Scope {
    kinds: HashMap<String, Kind>,
    rings: HashMap<String, Ring>,
    /// Ring name of each ideal and module.
    owner: HashMap<String, String>,
    ideals: HashMap<String, Ideal>,
    last_ring: Option<String>,
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: self.line, column, message: message.into() })
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.column)
    }

    fn next(&mut self, what: &str) -> Result<&'a Token, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => self.err(self.end, format!("expected {what}")),
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, word: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{word}`"))?;
        if t.text != word {
            return self.err(t.column, format!("expected `{word}`, found `{}`", t.text));
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let t = self.next(what)?;
        t.text.parse().or_else(|_| self.err(t.column, format!("expected {what}, found `{}`", t.text)))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) => self.err(t.column, format!("unexpected `{}`", t.text)),
            None => Ok(()),
        }
    }
}

impl Scope {
    fn declare(&mut self, cur: &Cursor, tok: &Token, kind: Kind) -> Result<String, ParseError> {
        let name = &tok.text;
        let valid = name.chars().next().is_some_and(char::is_alphabetic)
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid {
            return cur.err(tok.column, format!("invalid name `{name}`"));
        }
        if self.kinds.contains_key(name) {
            return cur.err(tok.column, format!("`{name}` is already declared"));
        }
        self.kinds.insert(name.clone(), kind);
        Ok(name.clone())
    }

    fn resolve(&self, cur: &Cursor, tok: &Token, kind: Kind) -> Result<String, ParseError> {
        match self.kinds.get(&tok.text) {
            Some(k) if *k == kind => Ok(tok.text.clone()),
            Some(k) => cur.err(tok.column, format!("`{}` is a {k}, expected a {kind}", tok.text)),
            None => cur.err(tok.column, format!("undeclared {kind} `{}`", tok.text)),
        }
    }

    /// Optional `in R`, defaulting to the last declared ring.
    fn ring_clause(&self, cur: &mut Cursor) -> Result<String, ParseError> {
        if cur.peek().is_some_and(|t| t.text == "in") {
            cur.pos += 1;
            let t = cur.next("a ring name")?;
            return self.resolve(cur, t, Kind::Ring);
        }
        match &self.last_ring {
            Some(r) => Ok(r.clone()),
            None => cur.err(cur.column(), "no ring declared"),
        }
    }

    fn ideal_literal(&self, cur: &Cursor, tok: &Token, ring: &Ring) -> Result<Ideal, ParseError> {
        let inner = tok
            .text
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .map_or_else(|| cur.err(tok.column, "expected `(generators)`"), Ok)?;
        let mut gens = Vec::new();
        for part in inner.split(',').filter(|p| !p.is_empty()) {
            let e = parse_elem(ring.cover(), part)
                .and_then(|e| ring.element(&ring.reduce(&e)))
                .or_else(|e| cur.err(tok.column, e.to_string()))?;
            gens.push(e);
        }
        ideal_of(ring, &gens).or_else(|e| cur.err(tok.column, e.to_string()))
    }

    fn same_ring(&self, cur: &Cursor, tok: &Token, names: &[&String]) -> Result<(), ParseError> {
        let rings: Vec<&String> = names.iter().map(|n| &self.owner[*n]).collect();
        if rings.windows(2).any(|w| w[0] != w[1]) {
            return cur.err(tok.column, "arguments live over different rings");
        }
        Ok(())
    }
}

fn matrix_literal(cur: &Cursor, tok: &Token, ring: &Ring) -> Result<Mat, ParseError> {
    let bad = |m: &str| cur.err::<Mat>(tok.column, m.to_string());
    let text = &tok.text;
    let Some(inner) = text.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
        return bad("expected a matrix `[[..],..]`");
    };
    let mut rows: Vec<Vec<crate::ring::Elem>> = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('[') else { return bad("expected `[` starting a row") };
        let Some(close) = body.find(']') else { return bad("unterminated row") };
        let mut row = Vec::new();
        for part in body[..close].split(',').filter(|p| !p.is_empty()) {
            let e = parse_elem(ring.cover(), part).or_else(|e| cur.err(tok.column, e.to_string()))?;
            row.push(e);
        }
        rows.push(row);
        rest = body[close + 1..].strip_prefix(',').unwrap_or(&body[close + 1..]);
    }
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return bad("rows have different lengths");
    }
    Ok(Mat::from_rows(ring.cover(), rows))
}

fn flags(cur: &mut Cursor, allowed: &[&str]) -> Result<Flags, ParseError> {
    let mut f = Flags::default();
    while let Some(t) = cur.peek() {
        if !t.text.starts_with("--") {
            break;
        }
        cur.pos += 1;
        let key = t.text.trim_start_matches("--");
        if !allowed.contains(&key) {
            return cur.err(t.column, format!("unknown flag `{}`", t.text));
        }
        match key {
            "degree" => f.degree = Some(cur.number("a degree")?),
            "kmax" => {
                let k: u32 = cur.number("a positive kmax")?;
                if k == 0 {
                    return cur.err(t.column, "kmax must be at least 1");
                }
                f.kmax = Some(k);
            }
            "seed" => f.seed = Some(cur.number("a seed")?),
            "budget" => f.budget = Some(cur.number("a budget")?),
            _ => unreachable!(),
        }
    }
    Ok(f)
}

pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let mut scope = Scope::default();
    let mut statements = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let mut cur = Cursor { tokens: &tokens, pos: 0, line: line_no, end: content.chars().count() + 1 };
        let stmt = statement(&mut scope, &mut cur, content)?;
        statements.push(stmt);
        lines.push(line_no);
    }
    Ok(Session { statements, lines })
}

fn statement(scope: &mut Scope, cur: &mut Cursor, content: &str) -> Result<Statement, ParseError> {
    let head = cur.next("a statement")?;
    match head.text.as_str() {
        "ring" => {
            let name_tok = cur.next("a ring name")?;
            cur.expect("=")?;
            let Some(ring_tok) = cur.peek() else { return cur.err(cur.end, "expected a ring") };
            let ring_text: String = content.chars().skip(ring_tok.column - 1).collect();
            let ring: Ring = ring_text.trim().parse().or_else(|e: crate::Error| cur.err(ring_tok.column, e.to_string()))?;
            let name = scope.declare(cur, name_tok, Kind::Ring)?;
            scope.rings.insert(name.clone(), ring.clone());
            scope.last_ring = Some(name.clone());
            Ok(Statement::Ring { name, ring })
        }
        "ideal" => {
            let name_tok = cur.next("an ideal name")?;
            cur.expect("=")?;
            let lit = cur.next("`(generators)`")?;
            let ring_name = scope.ring_clause(cur)?;
            cur.finish()?;
            let ring = scope.rings[&ring_name].clone();
            let ideal = scope.ideal_literal(cur, lit, &ring)?;
            let name = scope.declare(cur, name_tok, Kind::Ideal)?;
            scope.owner.insert(name.clone(), ring_name.clone());
            scope.ideals.insert(name.clone(), ideal.clone());
            Ok(Statement::Ideal { name, ring: ring_name, ideal })
        }
        "module" => {
            let name_tok = cur.next("a module name")?;
            cur.expect("=")?;
            let form = cur.next("`free`, `coker` or `quotient`")?;
            let (ring_name, source, module) = match form.text.as_str() {
                "free" => {
                    let n: usize = cur.number("a rank")?;
                    let r = scope.ring_clause(cur)?;
                    let m = FpModule::free(&scope.rings[&r], n);
                    (r, ModuleSource::Free(n), m)
                }
                "coker" => {
                    let lit = cur.next("a matrix")?;
                    let r = scope.ring_clause(cur)?;
                    let ring = &scope.rings[&r];
                    let mat = matrix_literal(cur, lit, ring)?;
                    let m = FpModule::from_presentation(ring, &mat)
                        .or_else(|e| cur.err(lit.column, e.to_string()))?;
                    (r, ModuleSource::Coker, m)
                }
                "quotient" => {
                    let rt = cur.next("a ring name")?;
                    let r = scope.resolve(cur, rt, Kind::Ring)?;
                    let it = cur.next("an ideal")?;
                    let ideal = if it.text.starts_with('(') {
                        scope.ideal_literal(cur, it, &scope.rings[&r])?
                    } else {
                        let n = scope.resolve(cur, it, Kind::Ideal)?;
                        if scope.owner[&n] != r {
                            return cur.err(it.column, format!("`{n}` is not an ideal of `{r}`"));
                        }
                        scope.ideals[&n].clone()
                    };
                    let r2 = scope.ring_clause(cur)?;
                    if r2 != r && cur.tokens.iter().any(|t| t.text == "in") {
                        return cur.err(rt.column, "quotient ring and `in` clause disagree");
                    }
                    let m = FpModule::cyclic(&ideal);
                    (r, ModuleSource::Quotient(ideal), m)
                }
                other => return cur.err(form.column, format!("unknown module form `{other}`")),
            };
            cur.finish()?;
            let name = scope.declare(cur, name_tok, Kind::Module)?;
            scope.owner.insert(name.clone(), ring_name.clone());
            Ok(Statement::Module { name, ring: ring_name, source, module })
        }
        "compute" => compute(scope, cur),
        "check" => check(scope, cur),
        "suite" => {
            let t = cur.next("a suite name")?;
            if !SUITE_NAMES.contains(&t.text.as_str()) && t.text != "fuzz" {
                return cur.err(t.column, format!("unknown suite `{}`", t.text));
            }
            let f = flags(cur, &["seed", "budget", "degree", "kmax"])?;
            cur.finish()?;
            Ok(Statement::Command { command: Command::Suite { name: t.text.clone() }, flags: f })
        }
        other => cur.err(head.column, format!("unknown command `{other}`")),
    }
}

fn compute(scope: &Scope, cur: &mut Cursor) -> Result<Statement, ParseError> {
    let what = cur.next("a computation")?;
    let command = match what.text.as_str() {
        "gamma" | "lambda" | "D" | "F" => {
            let functor = match what.text.as_str() {
                "gamma" => Functor::Gamma,
                "lambda" => Functor::Lambda,
                "D" => Functor::D,
                _ => Functor::F,
            };
            let it = cur.next("an ideal")?;
            let ideal = scope.resolve(cur, it, Kind::Ideal)?;
            let mt = cur.next("a module")?;
            let module = scope.resolve(cur, mt, Kind::Module)?;
            scope.same_ring(cur, mt, &[&ideal, &module])?;
            Command::Limit { functor, ideal, module }
        }
        "ext" | "tor" => {
            let degree: usize = cur.number("a degree")?;
            let lt = cur.next("a module")?;
            let left = scope.resolve(cur, lt, Kind::Module)?;
            let rt = cur.next("a module")?;
            let right = scope.resolve(cur, rt, Kind::Module)?;
            scope.same_ring(cur, rt, &[&left, &right])?;
            if what.text == "ext" {
                Command::Ext { degree, left, right }
            } else {
                Command::Tor { degree, left, right }
            }
        }
        "Hloc" | "hloc" => {
            let degree: usize = cur.number("a degree")?;
            let it = cur.next("an ideal")?;
            let ideal = scope.resolve(cur, it, Kind::Ideal)?;
            let mt = cur.next("a module")?;
            let module = scope.resolve(cur, mt, Kind::Module)?;
            scope.same_ring(cur, mt, &[&ideal, &module])?;
            if what.text == "Hloc" {
                Command::LocalCohomology { degree, ideal, module }
            } else {
                Command::LocalHomology { degree, ideal, module }
            }
        }
        "dims" => {
            let it = cur.next("an ideal")?;
            let ideal = scope.resolve(cur, it, Kind::Ideal)?;
            let mut modules = Vec::new();
            while let Some(t) = cur.peek().filter(|t| !t.text.starts_with("--")) {
                cur.pos += 1;
                modules.push(scope.resolve(cur, t, Kind::Module)?);
                scope.same_ring(cur, t, &[&ideal, modules.last().expect("pushed")])?;
            }
            if modules.is_empty() {
                return cur.err(cur.column(), "expected at least one module");
            }
            Command::Dims { ideal, modules }
        }
        other => return cur.err(what.column, format!("unknown computation `{other}`")),
    };
    let f = flags(cur, &["degree", "kmax"])?;
    cur.finish()?;
    Ok(Statement::Command { command, flags: f })
}

fn check(scope: &Scope, cur: &mut Cursor) -> Result<Statement, ParseError> {
    let what = cur.next("a predicate or check name")?;
    let it = cur.next("an ideal")?;
    let ideal = scope.resolve(cur, it, Kind::Ideal)?;
    let mut modules = Vec::new();
    while let Some(t) = cur.peek().filter(|t| !t.text.starts_with("--") && t.text != "over") {
        cur.pos += 1;
        let m = scope.resolve(cur, t, Kind::Module)?;
        scope.same_ring(cur, t, &[&ideal, &m])?;
        modules.push(m);
    }
    let mut over = None;
    if cur.peek().is_some_and(|t| t.text == "over") {
        cur.pos += 1;
        let t = cur.next("an ideal of the base ring")?;
        over = Some(scope.resolve(cur, t, Kind::Ideal)?);
    }
    let command = match what.text.as_str() {
        "reduced" | "coreduced" => {
            if modules.len() != 1 || over.is_some() {
                return cur.err(what.column, "expected `check reduced I M`");
            }
            let module = modules.pop().expect("one module");
            if what.text == "reduced" {
                Command::Reduced { ideal, module }
            } else {
                Command::Coreduced { ideal, module }
            }
        }
        name if check_names().contains(&name) => {
            let ok = arity(name).map_or(!modules.is_empty(), |n| n == modules.len());
            if !ok {
                return cur.err(what.column, format!("wrong number of modules for `{name}`"));
            }
            if needs_base(name) != over.is_some() {
                let msg = if needs_base(name) { "needs `over X`" } else { "takes no `over` clause" };
                return cur.err(what.column, format!("`{name}` {msg}"));
            }
            if let Some(x) = &over {
                let s = &scope.rings[&scope.owner[x]];
                let r = &scope.rings[&scope.owner[&ideal]];
                let gen = scope.ideals[x].generator();
                if s.cover() != r.cover() || s.quotient_by(&gen) != *r {
                    return cur.err(what.column, format!("{r} is not the quotient of {s} by ({gen})"));
                }
            }
            Command::Check { name: name.to_string(), ideal, modules, over }
        }
        other => return cur.err(what.column, format!("unknown check `{other}`")),
    };
    let f = flags(cur, &["degree", "kmax"])?;
    cur.finish()?;
    Ok(Statement::Command { command, flags: f })
}

fn flag_text(f: &Flags) -> String {
    let mut s = String::new();
    if let Some(v) = f.seed {
        s += &format!(" --seed {v}");
    }
    if let Some(v) = f.budget {
        s += &format!(" --budget {v}");
    }
    if let Some(v) = f.degree {
        s += &format!(" --degree {v}");
    }
    if let Some(v) = f.kmax {
        s += &format!(" --kmax {v}");
    }
    s
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Limit { functor, ideal, module } => {
                write!(f, "compute {} {ideal} {module}", functor.keyword())
            }
            Command::Ext { degree, left, right } => write!(f, "compute ext {degree} {left} {right}"),
            Command::Tor { degree, left, right } => write!(f, "compute tor {degree} {left} {right}"),
            Command::LocalCohomology { degree, ideal, module } => {
                write!(f, "compute Hloc {degree} {ideal} {module}")
            }
            Command::LocalHomology { degree, ideal, module } => {
                write!(f, "compute hloc {degree} {ideal} {module}")
            }
            Command::Dims { ideal, modules } => write!(f, "compute dims {ideal} {}", modules.join(" ")),
            Command::Reduced { ideal, module } => write!(f, "check reduced {ideal} {module}"),
            Command::Coreduced { ideal, module } => write!(f, "check coreduced {ideal} {module}"),
            Command::Check { name, ideal, modules, over } => {
                write!(f, "check {name} {ideal}")?;
                for m in modules {
                    write!(f, " {m}")?;
                }
                if let Some(x) = over {
                    write!(f, " over {x}")?;
                }
                Ok(())
            }
            Command::Suite { name } => write!(f, "suite {name}"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring { name, ring } => write!(f, "ring {name} = {ring}"),
            Statement::Ideal { name, ring, ideal } => write!(f, "ideal {name} = {ideal} in {ring}"),
            Statement::Module { name, ring, source, module } => match source {
                ModuleSource::Free(n) => write!(f, "module {name} = free {n} in {ring}"),
                ModuleSource::Coker => {
                    write!(f, "module {name} = coker {} in {ring}", module.relations())
                }
                ModuleSource::Quotient(i) => write!(f, "module {name} = quotient {ring} {i} in {ring}"),
            },
            Statement::Command { command, flags } => write!(f, "{command}{}", flag_text(flags)),
        }
    }
}

impl fmt::Display for Session {
    /// Canonical text; parses back to an equal session.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_echoes() {
        let text = "ring R = Z/12\nideal I = (16)   # reduced to (4)\nmodule M = free 1\n\ncompute gamma I M --kmax 5\n";
        let s = parse_session(text).unwrap();
        assert_eq!(s.statements.len(), 4);
        assert_eq!(s.lines, vec![1, 2, 3, 5]);
        let echo = s.to_string();
        assert!(echo.contains("ideal I = (4) in R"));
        assert_eq!(parse_session(&echo).unwrap(), s);
    }

    #[test]
    fn polynomial_rings_and_matrices() {
        let text = "ring S = GF(2)[x]/(x^3)\nmodule M = coker [[x, 0], [0, x^2]] in S\nmodule Q = quotient S (x)\n";
        let s = parse_session(text).unwrap();
        let Statement::Module { module, .. } = &s.statements[1] else { panic!() };
        assert_eq!(module.cardinality(), Some(8));
        assert_eq!(parse_session(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_session("ring R = Z/12\nmodule M = free 1\ncompute gamma J M\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 15));
        assert!(e.message.contains("undeclared ideal `J`"));
        let e = parse_session("ring R = Z/12\nfrobnicate\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_session("ring R = Z/12\nring R = Z\n").unwrap_err();
        assert!(e.message.contains("already declared"));
        let e = parse_session("ring R = Z/12\nmodule M = coker [[1,2]\n").unwrap_err();
        assert!(e.message.contains("unbalanced"));
        let e = parse_session("ring R = Z/12\nmodule M = free 1\ncompute ext 1 M M --kmax 0\n").unwrap_err();
        assert!(e.message.contains("kmax"));
    }

    #[test]
    fn descent_checks_validate_the_base() {
        let ok = "ring S = Z/9\nring R = Z/3\nideal X = (3) in S\nideal I = (0) in R\nmodule M = free 1 in R\ncheck lt1_ext I M over X\n";
        assert!(parse_session(ok).is_ok());
        let bad = ok.replace("(3) in S", "(1) in S");
        assert!(parse_session(&bad).unwrap_err().message.contains("not the quotient"));
    }

    #[test]
    fn empty_session() {
        assert!(parse_session("# nothing\n\n").unwrap().statements.is_empty());
    }
}
