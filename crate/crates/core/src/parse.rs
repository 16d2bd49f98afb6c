//! Text grammar for polynomials, ring declarations, ideals and matrices.
//!
//! Polynomials use integers, declared variable names, `+ - * ^` and
//! parentheses. Multiplication must be explicit; whitespace is ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::field::Field;
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character {other:?}") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly<F::Elem>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F::Elem>> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = self.ring.mul(&acc, &f);
        }
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                self.err("implicit multiplication is not allowed; use '*'")
            }
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Poly<F::Elem>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let u = self.unary()?;
                Ok(self.ring.neg(&u))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<F::Elem>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(self.ring.pow(&base, e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<F::Elem>> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(self.ring.var(i))
                }
                None => self.err(format!("undeclared variable {name}")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parses one polynomial in `ring`.
pub fn parse_poly<F: Field>(ring: &Ring<F>, src: &str) -> Result<Poly<F::Elem>> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, end: src.len(), ring };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// A parsed `ring q [x,y]` or `ring fp 32003 [x,y]` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub field: FieldSpec,
    pub vars: Vec<String>,
}

pub fn parse_ring_decl(line: &str) -> Result<RingDecl> {
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("ring declaration: {msg}") };
    let line = line.trim();
    let rest = line.strip_prefix("ring").ok_or_else(|| bad("must start with 'ring'"))?;
    let open = rest.find('[').ok_or_else(|| bad("missing '['"))?;
    let close = rest.rfind(']').ok_or_else(|| bad("missing ']'"))?;
    if close < open || !rest[close + 1..].trim().is_empty() {
        return Err(bad("malformed variable list"));
    }
    let head: Vec<&str> = rest[..open].split_whitespace().collect();
    let field = match head.as_slice() {
        ["q"] => FieldSpec::Rationals,
        ["fp", p] => FieldSpec::Prime { modulus: p.parse().map_err(|_| bad("bad modulus"))? },
        _ => return Err(bad("expected 'q' or 'fp <prime>'")),
    };
    let vars: Vec<String> = rest[open + 1..close]
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if vars.is_empty() {
        return Err(bad("no variables"));
    }
    for v in &vars {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(bad(&format!("bad variable name {v:?}")));
        }
    }
    Ok(RingDecl { field, vars })
}

/// Splits an ideal file body into generator strings.
///
/// Generators are separated by newlines, commas or semicolons; `#` starts a
/// comment; a leading `ring ...` line is returned separately.
pub fn split_ideal_text(src: &str) -> (Option<RingDecl>, Vec<String>, Vec<Error>) {
    let mut decl = None;
    let mut gens = Vec::new();
    let mut errs = Vec::new();
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("ring ") || line == "ring" {
            match parse_ring_decl(line) {
                Ok(d) => decl = Some(d),
                Err(e) => errs.push(e),
            }
            continue;
        }
        for g in line.split([',', ';']) {
            let g = g.trim();
            if !g.is_empty() {
                gens.push(g.to_string());
            }
        }
    }
    (decl, gens, errs)
}

/// Matrix text: one row per line, entries separated by `;`.
pub fn parse_matrix_rows<F: Field>(ring: &Ring<F>, src: &str) -> Result<Vec<Vec<Poly<F::Elem>>>> {
    let mut rows = Vec::new();
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("ring ") {
            continue;
        }
        let row = line.split(';').map(|e| parse_poly(ring, e.trim())).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty("matrix has no rows"));
    }
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(Error::Parse { pos: 0, msg: "ragged matrix rows".into() });
    }
    Ok(rows)
}
