use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Var(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) | Term::Var(c) => f.write_str(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.variables().next().is_none()
    }

    /// The ground atom, if there are no variables.
    pub fn to_ground(&self) -> Option<GroundAtom> {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                Term::Var(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GroundAtom {
            predicate: self.predicate.clone(),
            args,
        })
    }
}

fn write_atom<T: fmt::Display>(f: &mut fmt::Formatter<'_>, pred: &str, args: &[T]) -> fmt::Result {
    f.write_str(pred)?;
    if !args.is_empty() {
        f.write_str("(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atom(f, &self.predicate, &self.args)
    }
}

/// A variable-free atom: one point of the Herbrand base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new<S: Into<String>>(
        predicate: impl Into<String>,
        args: impl IntoIterator<Item = S>,
    ) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atom(f, &self.predicate, &self.args)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Rule {
    /// Distinct variables in order of first occurrence, body first.
    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in self
            .body
            .iter()
            .chain(std::iter::once(&self.head))
            .flat_map(Atom::variables)
        {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty() && self.head.is_ground()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, a) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
        }
        f.write_str(".")
    }
}

pub type Interpretation = BTreeSet<GroundAtom>;

/// A validated positive program: range-restricted, arity-consistent, with
/// duplicate rules and duplicate body atoms removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    constants: BTreeSet<String>,
    predicates: BTreeMap<String, usize>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Result<Self> {
        let mut predicates: BTreeMap<String, usize> = BTreeMap::new();
        let mut constants = BTreeSet::new();
        let mut kept: Vec<Rule> = Vec::new();
        for mut rule in rules {
            for atom in std::iter::once(&rule.head).chain(&rule.body) {
                match predicates.get(&atom.predicate) {
                    Some(&arity) if arity != atom.args.len() => {
                        return Err(Error::ArityMismatch {
                            predicate: atom.predicate.clone(),
                            expected: arity,
                            found: atom.args.len(),
                        })
                    }
                    _ => {
                        predicates.insert(atom.predicate.clone(), atom.args.len());
                    }
                }
                for t in &atom.args {
                    if let Term::Const(c) = t {
                        constants.insert(c.clone());
                    }
                }
            }
            if let Some(v) = rule
                .head
                .variables()
                .find(|v| !rule.body.iter().any(|b| b.variables().any(|w| w == *v)))
            {
                return Err(Error::UnsafeRule {
                    rule: rule.to_string(),
                    variable: v.to_string(),
                });
            }
            let mut seen = Vec::new();
            rule.body.retain(|a| {
                if seen.contains(a) {
                    false
                } else {
                    seen.push(a.clone());
                    true
                }
            });
            if !kept.contains(&rule) {
                kept.push(rule);
            }
        }
        Ok(Program {
            rules: kept,
            constants,
            predicates,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    /// Predicate name to arity.
    pub fn predicates(&self) -> &BTreeMap<String, usize> {
        &self.predicates
    }

    /// The ground facts (rules with an empty body and a ground head).
    pub fn facts(&self) -> Interpretation {
        self.rules
            .iter()
            .filter(|r| r.body.is_empty())
            .filter_map(|r| r.head.to_ground())
            .collect()
    }

    /// `|B| = Σ |constants|^arity`, or `None` on overflow.
    pub fn herbrand_size(&self) -> Option<u128> {
        let c = self.constants.len() as u128;
        self.predicates.values().try_fold(0u128, |acc, &arity| {
            acc.checked_add(c.checked_pow(u32::try_from(arity).ok()?)?)
        })
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
