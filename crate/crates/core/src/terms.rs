//! Well-founded terms: the initial algebra for functors whose chain keeps
//! growing (naturals, lists), truncated at a depth bound.
//!
//! A term is `in(t)` where `t` is an element of `φ(terms)`. Depth counts
//! `in` layers, so the terms of depth `≤ n` are in bijection with stage `X_n`
//! of the initial chain.

use crate::chain::{detect_convergence, Chain};
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::{Algebra, FunctorExpr};

#[derive(Clone, Debug)]
pub struct TermUniverse {
    functor: FunctorExpr,
    depth_bound: usize,
    terms: FinSet,
    /// Terms of depth `≤ depth_bound - 1` (empty for bound 0).
    shallower: FinSet,
}

impl TermUniverse {
    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    pub fn terms(&self) -> &FinSet {
        &self.terms
    }

    /// `φ(terms of depth ≤ d-1)`: the layers that wrap into this universe.
    pub fn layers(&self) -> FinSet {
        if self.depth_bound == 0 {
            FinSet::empty()
        } else {
            self.functor.apply_obj(&self.shallower)
        }
    }

    /// Wraps one layer, failing when the result would be deeper than the bound.
    pub fn wrap(&self, layer: &Elem) -> Result<Elem> {
        let term = Elem::wrap(layer.clone());
        if self.terms.contains(&term) {
            return Ok(term);
        }
        check_term(&self.functor, &term)?;
        Err(Error::DepthOverflow {
            element: layer.to_string(),
            depth: self.depth_bound,
        })
    }

    pub fn unwrap(&self, term: &Elem) -> Result<Elem> {
        match term {
            Elem::In(layer) if self.terms.contains(term) => Ok((**layer).clone()),
            _ => Err(Error::MalformedTerm {
                term: term.to_string(),
                reason: format!("not a term of depth at most {}", self.depth_bound),
            }),
        }
    }

    /// `in: φ(T_{d-1}) -> T_d`.
    pub fn in_map(&self) -> FinFn {
        FinFn::from_fn(self.layers(), self.terms.clone(), |e| self.wrap(e))
            .expect("every layer wraps into the universe")
    }

    /// `out: T_d -> φ(T_{d-1})`.
    pub fn out_map(&self) -> FinFn {
        FinFn::from_fn(self.terms.clone(), self.layers(), |t| self.unwrap(t))
            .expect("every term unwraps to a layer")
    }
}

/// All terms of depth at most `depth`.
pub fn enumerate_terms(functor: &FunctorExpr, depth: usize, cap: usize) -> Result<TermUniverse> {
    let mut terms = FinSet::empty();
    let mut shallower = FinSet::empty();
    for d in 1..=depth {
        let size = functor.cardinality(terms.len() as u128);
        if !size.is_some_and(|s| s <= cap as u128) {
            return Err(Error::StageExplosion {
                stage: d,
                size: size.map_or_else(|| "overflow".into(), |s| s.to_string()),
                cap,
            });
        }
        let next = FinSet::new(functor.apply_obj(&terms).iter().cloned().map(Elem::wrap));
        shallower = std::mem::replace(&mut terms, next);
    }
    Ok(TermUniverse {
        functor: functor.clone(),
        depth_bound: depth,
        terms,
        shallower,
    })
}

/// Verifies that `term` is a well-formed term of `functor`.
pub fn check_term(functor: &FunctorExpr, term: &Elem) -> Result<()> {
    match term {
        Elem::In(layer) => functor
            .map_layer(layer, &mut |sub| {
                check_term(functor, sub).map(|_| sub.clone())
            })
            .map(|_| ())
            .map_err(|e| match e {
                Error::MalformedElement { element, functor } => Error::MalformedTerm {
                    term: term.to_string(),
                    reason: format!("`{element}` is not a layer of `{functor}`"),
                },
                other => other,
            }),
        _ => Err(Error::MalformedTerm {
            term: term.to_string(),
            reason: "terms start with `in(`".into(),
        }),
    }
}

/// Maps a chain-stage element to the corresponding term by wrapping every layer.
pub fn stage_to_term(functor: &FunctorExpr, x: &Elem) -> Result<Elem> {
    Ok(Elem::wrap(
        functor.map_layer(x, &mut |sub| stage_to_term(functor, sub))?,
    ))
}

pub fn term_to_stage(functor: &FunctorExpr, t: &Elem) -> Result<Elem> {
    match t {
        Elem::In(layer) => functor.map_layer(layer, &mut |sub| term_to_stage(functor, sub)),
        _ => Err(Error::MalformedTerm {
            term: t.to_string(),
            reason: "terms start with `in(`".into(),
        }),
    }
}

/// The explicit bijection `X_n -> T_n` between chain stage `n` and the terms
/// of depth `≤ n`.
pub fn stage_bijection(chain: &Chain, universe: &TermUniverse) -> Result<FinFn> {
    let functor = universe.functor();
    if chain.functor() != functor {
        return Err(Error::FunctorMismatch {
            expected: chain.functor().to_string(),
            found: functor.to_string(),
        });
    }
    // Past convergence every stage equals the last one stored.
    let stored = chain.stages().get(universe.depth_bound());
    let stage = stored
        .or_else(|| detect_convergence(chain).and(chain.stages().last()))
        .ok_or_else(|| {
            Error::InvalidConfig(format!("chain has no stage {}", universe.depth_bound()))
        })?;
    let f = FinFn::from_fn(stage.clone(), universe.terms().clone(), |x| {
        stage_to_term(functor, x)
    })?;
    if !f.is_bijection() {
        return Err(Error::NotAnIso(format!(
            "stage {} and depth-{} terms are not in bijection",
            universe.depth_bound(),
            universe.depth_bound()
        )));
    }
    Ok(f)
}

/// Structural recursion: `cata(in(x)) = β(φ(cata)(x))`.
pub fn cata(functor: &FunctorExpr, target: &Algebra, term: &Elem) -> Result<Elem> {
    if target.functor() != functor {
        return Err(Error::FunctorMismatch {
            expected: functor.to_string(),
            found: target.functor().to_string(),
        });
    }
    cata_unchecked(functor, target, term)
}

fn cata_unchecked(functor: &FunctorExpr, target: &Algebra, term: &Elem) -> Result<Elem> {
    let Elem::In(layer) = term else {
        return Err(Error::MalformedTerm {
            term: term.to_string(),
            reason: "terms start with `in(`".into(),
        });
    };
    let mapped = functor
        .map_layer(layer, &mut |sub| cata_unchecked(functor, target, sub))
        .map_err(|e| match e {
            Error::MalformedElement { element, .. } => Error::MalformedTerm {
                term: term.to_string(),
                reason: format!("`{element}` is not a layer of `{functor}`"),
            },
            other => other,
        })?;
    target
        .structure()
        .apply(&mapped)
        .cloned()
        .ok_or_else(|| Error::MalformedTerm {
            term: term.to_string(),
            reason: format!("layer `{mapped}` is outside the target's structure map"),
        })
}

/// The numeral `n` for `1 + X`.
pub fn numeral(n: usize) -> Elem {
    let mut t = Elem::wrap(Elem::inl(Elem::Unit));
    for _ in 0..n {
        t = Elem::wrap(Elem::inr(t));
    }
    t
}

pub fn decode_numeral(t: &Elem) -> Option<usize> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur {
            Elem::In(layer) => match &**layer {
                Elem::Inl(u) if **u == Elem::Unit => return Some(n),
                Elem::Inr(next) => {
                    n += 1;
                    cur = next;
                }
                _ => return None,
            },
            _ => return None,
        }
    }
}

/// The list term for `1 + A * X`.
pub fn list_term(items: &[Elem]) -> Elem {
    items
        .iter()
        .rev()
        .fold(Elem::wrap(Elem::inl(Elem::Unit)), |tail, head| {
            Elem::wrap(Elem::inr(Elem::pair(head.clone(), tail)))
        })
}

pub fn decode_list(t: &Elem) -> Option<Vec<Elem>> {
    let mut items = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            Elem::In(layer) => match &**layer {
                Elem::Inl(u) if **u == Elem::Unit => return Some(items),
                Elem::Inr(cell) => match &**cell {
                    Elem::Pair(head, tail) => {
                        items.push((**head).clone());
                        cur = tail;
                    }
                    _ => return None,
                },
                _ => return None,
            },
            _ => return None,
        }
    }
}

/// Renders numerals as `#n` and lists as `[a,b]` when the functor has that
/// shape; otherwise the canonical form.
pub fn pretty(functor: &FunctorExpr, t: &Elem) -> String {
    if functor.is_naturals_shape() {
        if let Some(n) = decode_numeral(t) {
            return format!("#{n}");
        }
    }
    if functor.list_alphabet().is_some() {
        if let Some(items) = decode_list(t) {
            let parts: Vec<String> = items.iter().map(Elem::to_string).collect();
            return format!("[{}]", parts.join(","));
        }
    }
    t.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionViolation {
    pub n: usize,
    pub expected: Elem,
    pub found: Elem,
}

/// For `1 + X`: checks `h(#0) = β(L(*))` and `h(#n+1) = β(R(h(#n)))` for
/// `n < max_n`.
pub fn check_recursion_equations(
    target: &Algebra,
    max_n: usize,
) -> Result<Vec<RecursionViolation>> {
    let functor = target.functor();
    if !functor.is_naturals_shape() {
        return Err(Error::FunctorMismatch {
            expected: FunctorExpr::naturals().to_string(),
            found: functor.to_string(),
        });
    }
    let beta = target.structure();
    let zero = beta
        .apply(&Elem::inl(Elem::Unit))
        .expect("structure map is total")
        .clone();
    let succ = |y: &Elem| {
        beta.apply(&Elem::inr(y.clone()))
            .expect("structure map is total")
            .clone()
    };

    let mut violations = Vec::new();
    let mut prev = cata(functor, target, &numeral(0))?;
    if prev != zero {
        violations.push(RecursionViolation {
            n: 0,
            expected: zero,
            found: prev.clone(),
        });
    }
    for n in 1..=max_n {
        let h = cata(functor, target, &numeral(n))?;
        let expected = succ(&prev);
        if h != expected {
            violations.push(RecursionViolation {
                n,
                expected,
                found: h.clone(),
            });
        }
        prev = h;
    }
    Ok(violations)
}
