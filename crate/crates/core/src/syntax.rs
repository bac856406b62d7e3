//! Text formats for functor definitions and algebras.
//!
//! Functor files hold `;`- or newline-separated definitions:
//!
//! ```text
//! % lists over two letters
//! A = { a, b }
//! F = 1 + A * X
//! ```
//!
//! `*` binds tighter than `+`, both associate to the left. `X` is the
//! identity functor, `0` and `1` the constant empty and singleton functors.
//! The functor used is the one bound to `F`, or the last functor definition
//! when no `F` exists.
//!
//! Algebra files name the functor and the carrier, then list the structure
//! map one element per line:
//!
//! ```text
//! algebra F
//! carrier { even, odd }
//! L(*) -> even
//! R(even) -> odd
//! R(odd) -> even
//! ```

use std::collections::BTreeMap;

use crate::elem::{is_ident_byte, Elem};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::{Algebra, FunctorExpr};

/// A parsed functor file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDef {
    pub name: String,
    pub expr: FunctorExpr,
    pub sets: BTreeMap<String, FinSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Eq,
    Plus,
    Star,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Sep,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let src = raw.split('%').next().unwrap_or("").as_bytes();
        let mut i = 0;
        while i < src.len() {
            let column = i + 1;
            let b = src[i];
            let tok = match b {
                b' ' | b'\t' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'=' => Tok::Eq,
                b'+' => Tok::Plus,
                b'*' => Tok::Star,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'{' => Tok::LBrace,
                b'}' => Tok::RBrace,
                b',' => Tok::Comma,
                b';' => Tok::Sep,
                _ if is_ident_byte(b) => {
                    let start = i;
                    while i < src.len() && is_ident_byte(src[i]) {
                        i += 1;
                    }
                    let ident = String::from_utf8_lossy(&src[start..i]).into_owned();
                    out.push(Spanned {
                        tok: Tok::Ident(ident),
                        line,
                        column,
                    });
                    continue;
                }
                _ => {
                    return Err(Error::syntax(
                        line,
                        column,
                        format!("unexpected character `{}`", b as char),
                    ))
                }
            };
            out.push(Spanned { tok, line, column });
            i += 1;
        }
        out.push(Spanned {
            tok: Tok::Sep,
            line,
            column: src.len() + 1,
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sets: BTreeMap<String, FinSet>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(s) => Error::syntax(s.line, s.column, message),
            None => Error::syntax(1, 1, message),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn skip_separators(&mut self) {
        while self.peek() == Some(&Tok::Sep) {
            self.pos += 1;
        }
    }

    fn set_literal(&mut self) -> Result<FinSet> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut names = Vec::new();
        if self.peek() == Some(&Tok::RBrace) {
            self.pos += 1;
            return Ok(FinSet::empty());
        }
        loop {
            match self.bump() {
                Some(Tok::Ident(name)) => names.push(name),
                _ => {
                    self.pos -= 1;
                    return Err(self.error_here("expected an atom"));
                }
            }
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrace) => break,
                _ => {
                    self.pos -= 1;
                    return Err(self.error_here("expected `,` or `}`"));
                }
            }
        }
        Ok(FinSet::atoms(names))
    }

    fn sum(&mut self) -> Result<FunctorExpr> {
        let mut e = self.prod()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            e = FunctorExpr::sum(e, self.prod()?);
        }
        Ok(e)
    }

    fn prod(&mut self) -> Result<FunctorExpr> {
        let mut e = self.primary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            e = FunctorExpr::prod(e, self.primary()?);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<FunctorExpr> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(id)) => {
                let e = match id.as_str() {
                    "0" => FunctorExpr::Zero,
                    "1" => FunctorExpr::One,
                    "X" => FunctorExpr::Id,
                    _ => match self.sets.get(&id) {
                        Some(set) => FunctorExpr::constant(id.clone(), set.clone()),
                        None => return Err(self.error_here(format!("unknown constant set `{id}`"))),
                    },
                };
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error_here("expected a functor expression")),
        }
    }
}

fn valid_binding_name(name: &str) -> bool {
    name != "X" && name != "0" && name != "1" && !name.as_bytes()[0].is_ascii_digit()
}

/// Parses a functor file.
pub fn parse_functor(text: &str) -> Result<FunctorDef> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sets: BTreeMap::new(),
    };
    let mut functors: Vec<(String, FunctorExpr)> = Vec::new();
    loop {
        p.skip_separators();
        let Some(tok) = p.peek().cloned() else { break };
        let Tok::Ident(name) = tok else {
            return Err(p.error_here("expected a definition `name = ...`"));
        };
        if !valid_binding_name(&name) {
            return Err(p.error_here(format!("`{name}` cannot be bound")));
        }
        p.pos += 1;
        p.expect(Tok::Eq, "`=`")?;
        if p.peek() == Some(&Tok::LBrace) {
            let set = p.set_literal()?;
            p.sets.insert(name, set);
        } else {
            let expr = p.sum()?;
            functors.push((name, expr));
        }
        match p.peek() {
            None | Some(Tok::Sep) => {}
            _ => return Err(p.error_here("expected end of definition")),
        }
    }
    let chosen = functors
        .iter()
        .rposition(|(n, _)| n == "F")
        .or_else(|| functors.len().checked_sub(1))
        .ok_or_else(|| Error::syntax(1, 1, "no functor definition found"))?;
    let (name, expr) = functors.swap_remove(chosen);
    Ok(FunctorDef {
        name,
        expr,
        sets: p.sets,
    })
}

/// Splits `s` at top-level commas (outside parentheses).
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn malformed(message: impl Into<String>) -> Error {
    Error::AlgebraMalformed {
        message: message.into(),
    }
}

fn parse_elem_at(text: &str, line: usize) -> Result<Elem> {
    text.trim().parse::<Elem>().map_err(|e| match e {
        Error::Syntax {
            column, message, ..
        } => Error::syntax(line, column, message),
        other => other,
    })
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    match rest.bytes().next() {
        Some(b) if is_ident_byte(b) => None,
        _ if rest.contains("->") => None,
        _ => Some(rest),
    }
}

/// Parses an algebra file for the given functor.
///
/// Totality failures name the missing element and list the full expected
/// domain `φ(carrier)`.
pub fn parse_algebra(text: &str, functor: &FunctorDef) -> Result<Algebra> {
    let mut carrier: Option<FinSet> = None;
    let mut entries: Vec<(usize, Elem, Elem)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('%').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = keyword(body, "algebra") {
            let name = rest.trim();
            if !name.is_empty() && name != functor.name {
                return Err(Error::FunctorMismatch {
                    expected: functor.name.clone(),
                    found: name.to_string(),
                });
            }
        } else if let Some(rest) = keyword(body, "carrier") {
            let inner = rest
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| Error::syntax(line, 1, "expected `carrier { ... }`"))?;
            let elems = if inner.trim().is_empty() {
                Vec::new()
            } else {
                split_top_level(inner)
                    .into_iter()
                    .map(|t| parse_elem_at(t, line))
                    .collect::<Result<Vec<_>>>()?
            };
            carrier = Some(FinSet::new(elems));
        } else if let Some((lhs, rhs)) = body.split_once("->") {
            entries.push((line, parse_elem_at(lhs, line)?, parse_elem_at(rhs, line)?));
        } else {
            return Err(Error::syntax(
                line,
                1,
                "expected `algebra`, `carrier` or an `element -> element` line",
            ));
        }
    }
    let carrier = carrier.ok_or_else(|| malformed("missing `carrier { ... }` header"))?;
    let domain = functor.expr.apply_obj(&carrier);
    for (line, x, y) in &entries {
        if !domain.contains(x) {
            return Err(malformed(format!(
                "line {line}: `{x}` is not an element of the domain {domain}"
            )));
        }
        if !carrier.contains(y) {
            return Err(malformed(format!(
                "line {line}: value `{y}` is not in the carrier {carrier}"
            )));
        }
    }
    let structure = FinFn::from_pairs(
        domain.clone(),
        carrier.clone(),
        entries.into_iter().map(|(_, x, y)| (x, y)),
    )
    .map_err(|e| match e {
        Error::NotTotal { element } => malformed(format!(
            "no assignment for `{element}`; expected one line for each of {domain}"
        )),
        other => malformed(other.to_string()),
    })?;
    Algebra::new(functor.expr.clone(), carrier, structure)
}
