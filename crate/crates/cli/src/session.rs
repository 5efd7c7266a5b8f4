//! The session language.
//!
//! ```text
//! session := (stmt (NEWLINE | ';'))*
//! stmt    := ring | let | command
//! ring    := 'ring' ['char' UINT] 'vars' IDENT (',' IDENT)* ['ideal' [poly (',' poly)*]]
//! let     := 'let' NAME '=' expr
//! command := 'invariants' expr
//!          | 'resolve' expr UINT
//!          | 'ext_table' expr expr UINT
//!          | 'verify' THEOREM (KEY '=' (UINT | expr))*    KEY in M, N, n, j, p, bound, shift
//!          | 'corpus' PATH
//! expr    := NAME | 'residue_field' | 'free' '(' UINT ')' | 'cok' '(' matrix ')'
//!          | 'ideal' '(' poly (',' poly)* ')' | 'syz' '(' expr ',' UINT ')'
//!          | 'tr' '(' expr ')' | 'dual' '(' expr ')' | 'dsum' '(' expr ',' expr ')'
//!          | 'subq' '(' matrix ',' matrix ')' | 'ext' '(' expr ',' expr ',' UINT ')'
//! matrix  := '[' row (',' row)* ']'
//! row     := '[' poly (',' poly)* ']'
//! ```
//!
//! `#` starts a comment. A newline ends a statement unless it sits inside
//! brackets or parentheses. Polynomials use the engine's text grammar over
//! the declared variables.

use std::collections::HashSet;
use std::fmt;

use syzlab_core::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use syzlab_core::text::parse_polynomial_prefix;
use syzlab_core::{Polynomial, RingDescriptor};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    ResidueField,
    Free(usize),
    Cok(Vec<Vec<Polynomial>>),
    Ideal(Vec<Polynomial>),
    Syz(Box<Expr>, usize),
    Tr(Box<Expr>),
    Dual(Box<Expr>),
    Dsum(Box<Expr>, Box<Expr>),
    Subq(Vec<Vec<Polynomial>>, Vec<Vec<Polynomial>>),
    Ext(Box<Expr>, Box<Expr>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyArg {
    Int(usize),
    Module(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Invariants(Expr),
    Resolve(Expr, usize),
    ExtTable(Expr, Expr, usize),
    Verify {
        theorem: String,
        args: Vec<(String, VerifyArg)>,
    },
    Corpus(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub ring: Option<RingDescriptor>,
    /// `let` bindings in declaration order; a binding only refers to earlier ones.
    pub bindings: Vec<(String, Expr)>,
    pub commands: Vec<Command>,
}

/// Verifier names with their required and optional argument keys. Every
/// verifier also accepts `shift=1`, which runs the formula with one index
/// moved by one so that a failing check can be provoked on purpose.
pub const THEOREMS: &[(&str, &[&str], &[&str])] = &[
    ("thm_2_3", &["M"], &["n", "bound"]),
    ("cor_2_5", &[], &["bound"]),
    ("cor_2_7", &["M"], &["n", "bound"]),
    ("lemma_3_1", &["M", "N"], &["n", "bound"]),
    ("lemma_3_2", &["M"], &["j", "bound"]),
    ("thm_3_6", &["M"], &["bound"]),
    ("remark_3_7", &[], &["M", "bound"]),
    ("cor_3_8", &[], &["bound"]),
    ("cor_3_9", &[], &["bound"]),
    ("example", &[], &["p", "bound"]),
];

const MODULE_KEYS: &[&str] = &["M", "N"];

const KEYWORDS: &[&str] = &[
    "ring",
    "let",
    "residue_field",
    "free",
    "cok",
    "ideal",
    "syz",
    "tr",
    "dual",
    "dsum",
    "subq",
    "ext",
];

pub fn parse_session(src: &str) -> Result<Session> {
    parse_session_with(src, None)
}

/// Parses with the ring characteristic forced to `char_override` when given.
pub fn parse_session_with(src: &str, char_override: Option<u64>) -> Result<Session> {
    Parser {
        src,
        pos: 0,
        char_override,
        ring: None,
        names: HashSet::new(),
    }
    .session()
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    char_override: Option<u64>,
    ring: Option<RingDescriptor>,
    names: HashSet<String>,
}

impl<'a> Parser<'a> {
    fn err_at(&self, pos: usize, msg: impl Into<String>) -> CliError {
        let (line, col) = line_col(self.src, pos);
        CliError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    /// Skips blanks and comments; newlines too when `newlines` is set.
    fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            match c {
                b' ' | b'\t' | b'\r' => self.pos += 1,
                b'\n' if newlines => self.pos += 1,
                b'#' => {
                    while self.peek().is_some_and(|c| c != b'\n') {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn at_statement_end(&mut self) -> bool {
        self.skip_ws(false);
        matches!(self.peek(), None | Some(b'\n') | Some(b';'))
    }

    fn expect(&mut self, c: u8, newlines: bool) -> Result<()> {
        self.skip_ws(newlines);
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_at(self.pos, format!("expected `{}`", c as char)))
        }
    }

    /// Consumes `c` if it is next; never crosses a newline.
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws(false);
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, newlines: bool) -> Result<(usize, &'a str)> {
        self.skip_ws(newlines);
        let start = self.pos;
        let src: &'a str = self.src;
        let bytes = src.as_bytes();
        if !bytes.get(start).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'_') {
            return Err(self.err_at(start, "expected an identifier"));
        }
        let mut end = start + 1;
        while bytes.get(end).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            end += 1;
        }
        self.pos = end;
        Ok((start, &src[start..end]))
    }

    fn uint(&mut self, newlines: bool) -> Result<usize> {
        self.skip_ws(newlines);
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err_at(start, "expected an unsigned integer"))
    }

    fn session(mut self) -> Result<Session> {
        let mut session = Session {
            ring: None,
            bindings: Vec::new(),
            commands: Vec::new(),
        };
        loop {
            self.skip_ws(true);
            while self.peek() == Some(b';') {
                self.pos += 1;
                self.skip_ws(true);
            }
            if self.peek().is_none() {
                break;
            }
            let (start, word) = self.ident(false)?;
            match word {
                "ring" => {
                    if self.ring.is_some() {
                        return Err(self.err_at(start, "a session declares one ring"));
                    }
                    self.ring = Some(self.ring_decl()?);
                }
                "let" => {
                    self.require_ring(start)?;
                    let (at, name) = self.ident(false)?;
                    let name = name.to_string();
                    if KEYWORDS.contains(&name.as_str()) {
                        return Err(self.err_at(at, format!("`{name}` is reserved")));
                    }
                    if self.names.contains(&name) {
                        return Err(self.err_at(at, format!("name `{name}` is already bound")));
                    }
                    self.expect(b'=', false)?;
                    let e = self.expr(false)?;
                    self.names.insert(name.clone());
                    session.bindings.push((name, e));
                }
                "corpus" => {
                    self.skip_ws(false);
                    let from = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| !c.is_ascii_whitespace() && c != b';' && c != b'#')
                    {
                        self.pos += 1;
                    }
                    if from == self.pos {
                        return Err(self.err_at(from, "expected a directory"));
                    }
                    session
                        .commands
                        .push(Command::Corpus(self.src[from..self.pos].to_string()));
                }
                "invariants" | "resolve" | "ext_table" | "verify" => {
                    self.require_ring(start)?;
                    let word = word.to_string();
                    session.commands.push(self.command(&word)?);
                }
                other => return Err(self.err_at(start, format!("unknown statement `{other}`"))),
            }
            if !self.at_statement_end() {
                return Err(self.err_at(self.pos, "expected end of statement"));
            }
        }
        session.ring = self.ring;
        Ok(session)
    }

    fn require_ring(&self, at: usize) -> Result<()> {
        match self.ring {
            Some(_) => Ok(()),
            None => Err(self.err_at(at, "no ring declared before this statement")),
        }
    }

    fn ring_decl(&mut self) -> Result<RingDescriptor> {
        let (mut at, mut word) = self.ident(false)?;
        let mut p = DEFAULT_CHARACTERISTIC as u64;
        if word == "char" {
            self.skip_ws(false);
            let char_at = self.pos;
            p = self.uint(false)? as u64;
            if p <= 3 {
                return Err(self.err_at(char_at, format!("characteristic {p} must be a prime above 3")));
            }
            (at, word) = self.ident(false)?;
        }
        if let Some(q) = self.char_override {
            p = q;
        }
        let field = PrimeField::new(p).map_err(|e| self.err_at(at, e.to_string()))?;
        if word != "vars" {
            return Err(self.err_at(at, "expected `vars`"));
        }
        let mut vars = vec![self.ident(false)?.1.to_string()];
        while self.eat(b',') {
            vars.push(self.ident(false)?.1.to_string());
        }
        let mut ideal = Vec::new();
        if !self.at_statement_end() {
            let (at, word) = self.ident(false)?;
            if word != "ideal" {
                return Err(self.err_at(at, "expected `ideal`"));
            }
            if !self.at_statement_end() {
                loop {
                    self.skip_ws(false);
                    let at = self.pos;
                    let g = self.poly_over(&vars, field, false)?;
                    if !g.is_homogeneous() {
                        let (line, col) = line_col(self.src, at);
                        return Err(CliError::NonHomogeneousIdeal {
                            line,
                            col,
                            generator: g.display_with(&vars, field).to_string(),
                        });
                    }
                    ideal.push(g);
                    if !self.eat(b',') {
                        break;
                    }
                }
            }
        }
        RingDescriptor::new(field, vars, ideal).map_err(|e| self.err_at(at, e.to_string()))
    }

    fn poly_over(&mut self, vars: &[String], field: PrimeField, newlines: bool) -> Result<Polynomial> {
        self.skip_ws(newlines);
        let start = self.pos;
        if matches!(self.peek(), None | Some(b'\n')) {
            return Err(self.err_at(start, "expected a polynomial"));
        }
        let (p, used) =
            parse_polynomial_prefix(&self.src[start..], vars, field).map_err(|e| self.err_at(start, e.to_string()))?;
        self.pos = start + used;
        Ok(p)
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let ring = self.ring.clone().expect("ring checked before expressions");
        self.poly_over(&ring.vars, ring.field, true)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Polynomial>>> {
        self.expect(b'[', true)?;
        let mut rows = Vec::new();
        loop {
            self.skip_ws(true);
            let row_at = self.pos;
            self.expect(b'[', true)?;
            let mut row = vec![self.poly()?];
            loop {
                self.skip_ws(true);
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        row.push(self.poly()?);
                    }
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err_at(self.pos, "expected `,` or `]`")),
                }
            }
            if rows.first().is_some_and(|r: &Vec<Polynomial>| r.len() != row.len()) {
                return Err(self.err_at(row_at, "matrix rows differ in length"));
            }
            rows.push(row);
            self.skip_ws(true);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(rows);
                }
                _ => return Err(self.err_at(self.pos, "expected `,` or `]`")),
            }
        }
    }

    fn expr(&mut self, newlines: bool) -> Result<Expr> {
        let (at, word) = self.ident(newlines)?;
        let word = word.to_string();
        let inner = |p: &mut Self| -> Result<Box<Expr>> { Ok(Box::new(p.expr(true)?)) };
        let e = match word.as_str() {
            "residue_field" => return Ok(Expr::ResidueField),
            "free" => {
                self.expect(b'(', false)?;
                let n = self.uint(true)?;
                self.expect(b')', true)?;
                Expr::Free(n)
            }
            "cok" => {
                self.expect(b'(', false)?;
                let m = self.matrix()?;
                self.expect(b')', true)?;
                Expr::Cok(m)
            }
            "ideal" => {
                self.expect(b'(', false)?;
                let mut gens = vec![self.poly()?];
                while {
                    self.skip_ws(true);
                    self.peek() == Some(b',')
                } {
                    self.pos += 1;
                    gens.push(self.poly()?);
                }
                self.expect(b')', true)?;
                Expr::Ideal(gens)
            }
            "syz" => {
                self.expect(b'(', false)?;
                let e = inner(self)?;
                self.expect(b',', true)?;
                let n = self.uint(true)?;
                self.expect(b')', true)?;
                Expr::Syz(e, n)
            }
            "tr" | "dual" => {
                self.expect(b'(', false)?;
                let e = inner(self)?;
                self.expect(b')', true)?;
                if word == "tr" {
                    Expr::Tr(e)
                } else {
                    Expr::Dual(e)
                }
            }
            "dsum" => {
                self.expect(b'(', false)?;
                let a = inner(self)?;
                self.expect(b',', true)?;
                let b = inner(self)?;
                self.expect(b')', true)?;
                Expr::Dsum(a, b)
            }
            "subq" => {
                self.expect(b'(', false)?;
                let g = self.matrix()?;
                self.expect(b',', true)?;
                let r = self.matrix()?;
                self.expect(b')', true)?;
                if g.len() != r.len() {
                    return Err(self.err_at(at, "generators and relations live in different free modules"));
                }
                Expr::Subq(g, r)
            }
            "ext" => {
                self.expect(b'(', false)?;
                let a = inner(self)?;
                self.expect(b',', true)?;
                let b = inner(self)?;
                self.expect(b',', true)?;
                let i = self.uint(true)?;
                self.expect(b')', true)?;
                Expr::Ext(a, b, i)
            }
            _ => {
                if !self.names.contains(&word) {
                    let (line, col) = line_col(self.src, at);
                    return Err(CliError::UnknownName { line, col, name: word });
                }
                Expr::Name(word)
            }
        };
        Ok(e)
    }

    fn command(&mut self, word: &str) -> Result<Command> {
        Ok(match word {
            "invariants" => Command::Invariants(self.expr(false)?),
            "resolve" => {
                let e = self.expr(false)?;
                Command::Resolve(e, self.uint(false)?)
            }
            "ext_table" => {
                let a = self.expr(false)?;
                let b = self.expr(false)?;
                Command::ExtTable(a, b, self.uint(false)?)
            }
            _ => {
                let (at, theorem) = self.ident(false)?;
                let theorem = theorem.to_string();
                let Some(&(_, required, optional)) = THEOREMS.iter().find(|t| t.0 == theorem) else {
                    return Err(self.err_at(at, format!("unknown theorem `{theorem}`")));
                };
                let mut args: Vec<(String, VerifyArg)> = Vec::new();
                while !self.at_statement_end() {
                    let (key_at, key) = self.ident(false)?;
                    let key = key.to_string();
                    let known = required.contains(&key.as_str()) || optional.contains(&key.as_str()) || key == "shift";
                    if !known {
                        return Err(self.err_at(key_at, format!("`{theorem}` takes no argument `{key}`")));
                    }
                    if args.iter().any(|(k, _)| *k == key) {
                        return Err(self.err_at(key_at, format!("argument `{key}` given twice")));
                    }
                    self.expect(b'=', false)?;
                    let value = if MODULE_KEYS.contains(&key.as_str()) {
                        VerifyArg::Module(self.expr(false)?)
                    } else {
                        VerifyArg::Int(self.uint(false)?)
                    };
                    args.push((key, value));
                }
                if let Some(missing) = required.iter().find(|k| !args.iter().any(|(a, _)| a == *k)) {
                    return Err(self.err_at(at, format!("`{theorem}` needs {missing}=")));
                }
                Command::Verify { theorem, args }
            }
        })
    }
}

/// An expression printed in session syntax over the given ring.
pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    ring: Option<&'a RingDescriptor>,
}

impl Expr {
    pub fn display<'a>(&'a self, ring: Option<&'a RingDescriptor>) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, ring }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |p: &Polynomial| match self.ring {
            Some(r) => p.display_with(&r.vars, r.field).to_string(),
            None => format!("{p:?}"),
        };
        let matrix = |m: &[Vec<Polynomial>]| {
            let rows: Vec<String> = m
                .iter()
                .map(|r| format!("[{}]", r.iter().map(poly).collect::<Vec<_>>().join(", ")))
                .collect();
            format!("[{}]", rows.join(", "))
        };
        let sub = |e: &Expr| e.display(self.ring).to_string();
        match self.expr {
            Expr::Name(n) => f.write_str(n),
            Expr::ResidueField => f.write_str("residue_field"),
            Expr::Free(n) => write!(f, "free({n})"),
            Expr::Cok(m) => write!(f, "cok({})", matrix(m)),
            Expr::Ideal(g) => write!(f, "ideal({})", g.iter().map(poly).collect::<Vec<_>>().join(", ")),
            Expr::Syz(e, n) => write!(f, "syz({}, {n})", sub(e)),
            Expr::Tr(e) => write!(f, "tr({})", sub(e)),
            Expr::Dual(e) => write!(f, "dual({})", sub(e)),
            Expr::Dsum(a, b) => write!(f, "dsum({}, {})", sub(a), sub(b)),
            Expr::Subq(g, r) => write!(f, "subq({}, {})", matrix(g), matrix(r)),
            Expr::Ext(a, b, i) => write!(f, "ext({}, {}, {i})", sub(a), sub(b)),
        }
    }
}

impl Command {
    pub fn display<'a>(&'a self, ring: Option<&'a RingDescriptor>) -> String {
        match self {
            Command::Invariants(e) => format!("invariants {}", e.display(ring)),
            Command::Resolve(e, n) => format!("resolve {} {n}", e.display(ring)),
            Command::ExtTable(a, b, n) => format!("ext_table {} {} {n}", a.display(ring), b.display(ring)),
            Command::Verify { theorem, args } => {
                let mut s = format!("verify {theorem}");
                for (k, v) in args {
                    match v {
                        VerifyArg::Int(n) => s.push_str(&format!(" {k}={n}")),
                        VerifyArg::Module(e) => s.push_str(&format!(" {k}={}", e.display(ring))),
                    }
                }
                s
            }
            Command::Corpus(dir) => format!("corpus {dir}"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring.as_ref();
        if let Some(r) = ring {
            writeln!(f, "{r}")?;
        }
        for (name, e) in &self.bindings {
            writeln!(f, "let {name} = {}", e.display(ring))?;
        }
        for c in &self.commands {
            writeln!(f, "{}", c.display(ring))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_example_ring() {
        let s = parse_session("ring char 32003 vars x,y,z ideal x^2, x*y, y^2*z\n").unwrap();
        let r = s.ring.unwrap();
        assert_eq!(r.vars, ["x", "y", "z"]);
        assert_eq!(r.ideal.len(), 3);
        assert_eq!(r.field.characteristic(), 32003);
    }

    #[test]
    fn empty_ideal_clause_gives_polynomial_ring() {
        for src in ["ring vars x,y ideal", "ring char 101 vars x,y"] {
            assert!(parse_session(src).unwrap().ring.unwrap().ideal.is_empty());
        }
    }

    #[test]
    fn subquotient_binding() {
        let s = parse_session("ring vars x,y,z ideal x^2, x*y, y^2*z\nlet M = subq([[y,0],[0,z]], [[y],[z]])").unwrap();
        assert!(matches!(&s.bindings[0].1, Expr::Subq(g, r) if g.len() == 2 && r[0].len() == 1));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_session("ring vars x,y\nlet M = cok([[x, q]])") {
            Err(CliError::Parse { line: 2, col: 18, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_session("ring vars x,y\ninvariants N") {
            Err(CliError::UnknownName { line: 2, col: 12, name }) => assert_eq!(name, "N"),
            other => panic!("{other:?}"),
        }
        match parse_session("ring vars x,y ideal x^2, x + y^2") {
            Err(CliError::NonHomogeneousIdeal { line: 1, col: 26, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_session("let M = free(1)").is_err());
        assert!(parse_session("ring vars x\nlet M = free(1)\nlet M = free(2)").is_err());
        assert!(parse_session("ring vars x\nverify thm_3_6").is_err());
        assert!(parse_session("ring vars x\nverify cor_3_8 q=1").is_err());
        assert!(parse_session("ring vars x\nresolve free(1) 3 4").is_err());
    }

    #[test]
    fn statements_split_on_newlines_and_semicolons() {
        let s =
            parse_session("ring vars x,y; let A = cok([[x],\n [y]])  # two rows\nresolve A 2; invariants A").unwrap();
        assert_eq!(s.bindings.len(), 1);
        assert_eq!(s.commands.len(), 2);
    }

    #[test]
    fn char_override_replaces_declared_characteristic() {
        let s = parse_session_with("ring char 32003 vars x ideal x^2", Some(101)).unwrap();
        assert_eq!(s.ring.unwrap().field.characteristic(), 101);
    }

    #[test]
    fn printed_session_parses_back() {
        let src = "ring char 32003 vars x,y,z ideal x^2, x*y, y^2*z
let M = subq([[y, 0], [0, z]], [[y], [z]])
let W = cok([[y], [z]])
let E = ext(cok([[y]]), free(1), 2)
let T = dsum(tr(syz(residue_field, 1)), dual(ideal(x, -3*y^2 + z^2)))
invariants M
resolve W 4
ext_table E free(1) 3
verify thm_3_6 M=syz(residue_field, 1) bound=5
verify example p=101
corpus ../fixtures
";
        let s = parse_session(src).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_session(&printed).unwrap(), s);
        assert_eq!(parse_session(&printed).unwrap().to_string(), printed);
    }
}
