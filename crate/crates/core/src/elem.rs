//! Canonical element terms.
//!
//! Every object in the ambient category is a finite set of [`Elem`] trees.
//! The serialized form is canonical and doubles as the ordering key:
//!
//! | node        | syntax   |
//! |-------------|----------|
//! | `Unit`      | `*`      |
//! | `Atom(a)`   | `a`      |
//! | `Inl(t)`    | `L(t)`   |
//! | `Inr(t)`    | `R(t)`   |
//! | `Pair(t,u)` | `(t,u)`  |
//! | `In(t)`     | `in(t)`  |

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Unit,
    Atom(String),
    Inl(Arc<Elem>),
    Inr(Arc<Elem>),
    Pair(Arc<Elem>, Arc<Elem>),
    In(Arc<Elem>),
}

impl Elem {
    pub fn atom(name: impl Into<String>) -> Self {
        Elem::Atom(name.into())
    }

    pub fn inl(e: Elem) -> Self {
        Elem::Inl(Arc::new(e))
    }

    pub fn inr(e: Elem) -> Self {
        Elem::Inr(Arc::new(e))
    }

    pub fn pair(l: Elem, r: Elem) -> Self {
        Elem::Pair(Arc::new(l), Arc::new(r))
    }

    pub fn wrap(e: Elem) -> Self {
        Elem::In(Arc::new(e))
    }

    /// Canonical serialization; equal elements always produce equal strings.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Number of nested `In` layers along the deepest path.
    pub fn wrap_depth(&self) -> usize {
        match self {
            Elem::Unit | Elem::Atom(_) => 0,
            Elem::Inl(e) | Elem::Inr(e) => e.wrap_depth(),
            Elem::Pair(l, r) => l.wrap_depth().max(r.wrap_depth()),
            Elem::In(e) => 1 + e.wrap_depth(),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Unit => f.write_str("*"),
            Elem::Atom(a) => f.write_str(a),
            Elem::Inl(e) => write!(f, "L({e})"),
            Elem::Inr(e) => write!(f, "R({e})"),
            Elem::Pair(l, r) => write!(f, "({l},{r})"),
            Elem::In(e) => write!(f, "in({e})"),
        }
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.canonical().cmp(&other.canonical())
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Elem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = ElemParser {
            src: s.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let e = p.elem()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input after element"));
        }
        Ok(e)
    }
}

pub(crate) fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

struct ElemParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ElemParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::syntax(1, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn elem(&mut self) -> Result<Elem> {
        self.skip_ws();
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Elem::Unit)
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.elem()?;
                self.expect(b',')?;
                let r = self.elem()?;
                self.expect(b')')?;
                Ok(Elem::pair(l, r))
            }
            Some(b) if is_ident_byte(b) => {
                let start = self.pos;
                while self.peek().is_some_and(is_ident_byte) {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii identifier")
                    .to_string();
                let save = self.pos;
                self.skip_ws();
                if self.peek() != Some(b'(') {
                    self.pos = save;
                    return Ok(Elem::Atom(ident));
                }
                let ctor: fn(Elem) -> Elem = match ident.as_str() {
                    "L" => Elem::inl,
                    "R" => Elem::inr,
                    "in" => Elem::wrap,
                    _ => return Err(self.error(&format!("unknown constructor `{ident}`"))),
                };
                self.pos += 1;
                let inner = self.elem()?;
                self.expect(b')')?;
                Ok(ctor(inner))
            }
            _ => Err(self.error("expected an element")),
        }
    }
}
