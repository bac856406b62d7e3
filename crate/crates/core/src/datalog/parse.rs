//! Surface syntax:
//!
//! ```text
//! % transitive closure
//! edge(1,2). edge(2,3).
//! path(X,Y) :- edge(X,Y).
//! path(X,Z) :- path(X,Y), edge(Y,Z).
//! ```
//!
//! Constants start with a lowercase letter or a digit, variables with an
//! uppercase letter or `_`. Nullary atoms are written without parentheses.

use crate::elem::is_ident_byte;
use crate::error::{Error, Result};

use super::ast::{Atom, Program, Rule, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Turnstile,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn advance(&mut self) {
        if self.src[self.pos] == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        self.pos += 1;
    }

    /// Tokens with their positions, plus the end-of-input position.
    fn tokens(mut self) -> Result<(Vec<(Tok, usize, usize)>, (usize, usize))> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let (line, col) = (self.line, self.col);
            let b = self.src[self.pos];
            let tok = match b {
                b'%' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.advance();
                    }
                    continue;
                }
                _ if b.is_ascii_whitespace() => {
                    self.advance();
                    continue;
                }
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'.' => Tok::Dot,
                b':' => {
                    if self.src.get(self.pos + 1) != Some(&b'-') {
                        return Err(Error::syntax(line, col, "expected `:-`"));
                    }
                    self.advance();
                    Tok::Turnstile
                }
                _ if is_ident_byte(b) => {
                    let start = self.pos;
                    while self.pos < self.src.len() && is_ident_byte(self.src[self.pos]) {
                        self.advance();
                    }
                    let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    out.push((Tok::Ident(s), line, col));
                    continue;
                }
                _ => {
                    return Err(Error::syntax(
                        line,
                        col,
                        format!("unexpected character `{}`", b as char),
                    ))
                }
            };
            self.advance();
            out.push((tok, line, col));
        }
        Ok((out, (self.line, self.col)))
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.1, t.2))
            .unwrap_or(self.end);
        Error::syntax(line, col, message)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let s = self.ident("a constant or variable")?;
        let first = s.as_bytes()[0];
        Ok(if first.is_ascii_uppercase() || first == b'_' {
            Term::Var(s)
        } else {
            Term::Const(s)
        })
    }

    fn atom(&mut self) -> Result<Atom> {
        if let Some(Tok::Ident(s)) = self.peek() {
            let first = s.as_bytes()[0];
            if first.is_ascii_uppercase() || first == b'_' {
                return Err(self.error(format!(
                    "predicate `{s}` must not start with an uppercase letter or `_`"
                )));
            }
        }
        let predicate = self.ident("a predicate")?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                if self.eat(&Tok::RParen) {
                    break;
                }
                return Err(self.error("expected `,` or `)`"));
            }
        }
        Ok(Atom::new(predicate, args))
    }

    fn clause(&mut self) -> Result<Rule> {
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.eat(&Tok::Turnstile) {
            loop {
                body.push(self.atom()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        if !self.eat(&Tok::Dot) {
            return Err(self.error("expected `.`"));
        }
        Ok(Rule { head, body })
    }
}

/// Parses and validates a program.
pub fn parse_program(text: &str) -> Result<Program> {
    let lexer = Lexer {
        src: text.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let (toks, end) = lexer.tokens()?;
    let mut p = Parser { toks, pos: 0, end };
    let mut rules = Vec::new();
    while p.peek().is_some() {
        rules.push(p.clause()?);
    }
    Program::new(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datalog::ast::GroundAtom;

    #[test]
    fn single_fact() {
        let p = parse_program("edge(1,2).").unwrap();
        assert_eq!(p.rules().len(), 1);
        assert!(p.rules()[0].is_fact());
        assert_eq!(
            p.facts().into_iter().collect::<Vec<_>>(),
            vec![GroundAtom::new("edge", ["1", "2"])]
        );
    }

    #[test]
    fn rules_with_variables() {
        let p = parse_program("edge(1,2).\npath(X,Y) :- edge(X,Y). % base\n").unwrap();
        assert_eq!(p.rules().len(), 2);
        assert_eq!(p.rules()[1].variables(), vec!["X", "Y"]);
        assert_eq!(p.rules()[1].to_string(), "path(X,Y) :- edge(X,Y).");
        assert_eq!(p.constants().iter().collect::<Vec<_>>(), ["1", "2"]);
    }

    #[test]
    fn unsafe_rule() {
        let err = parse_program("p(X) :- q(Y).").unwrap_err();
        assert_eq!(
            err,
            Error::UnsafeRule {
                rule: "p(X) :- q(Y).".into(),
                variable: "X".into()
            }
        );
        assert!(matches!(
            parse_program("p(X)."),
            Err(Error::UnsafeRule { .. })
        ));
    }

    #[test]
    fn arity_mismatch() {
        let err = parse_program("p(a). p(a,b).").unwrap_err();
        assert!(matches!(
            err,
            Error::ArityMismatch {
                expected: 1,
                found: 2,
                ..
            }
        ));
    }

    #[test]
    fn nullary_atoms() {
        let p = parse_program("p. q :- p.").unwrap();
        assert_eq!(p.predicates().get("q"), Some(&0));
        assert_eq!(
            p.facts()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            ["p"]
        );
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_program("edge(1,2)\npath(X,Y) :- edge(X,Y).").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 2,
                    column: 1,
                    ..
                }
            ),
            "{err}"
        );
        let err = parse_program("p(a) : q(a).").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 1,
                    column: 6,
                    ..
                }
            ),
            "{err}"
        );
        assert!(matches!(parse_program("p(a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("P(a)."), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_program("p(a) :- ."),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn duplicates_are_dropped() {
        let p = parse_program("p(a). p(a). q(X) :- p(X), p(X). q(X) :- p(X).").unwrap();
        assert_eq!(p.rules().len(), 2);
        assert_eq!(p.rules()[1].body.len(), 1);
    }

    #[test]
    fn empty_program() {
        let p = parse_program("% nothing here\n").unwrap();
        assert!(p.rules().is_empty());
    }
}
