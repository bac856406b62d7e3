use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{kleene_lfp, KleeneRun, MonotoneOp, PowersetLattice};

use super::ast::{Atom, GroundAtom, Interpretation, Program, Rule, Term};

/// Every ground atom over the program's predicates and constants.
pub fn herbrand_base(program: &Program, cap: usize) -> Result<Vec<GroundAtom>> {
    let size = program.herbrand_size();
    if !size.is_some_and(|s| s <= cap as u128) {
        return Err(Error::StageExplosion {
            stage: 0,
            size: size.map_or_else(|| "overflow".into(), |s| s.to_string()),
            cap,
        });
    }
    let constants: Vec<&String> = program.constants().iter().collect();
    let c = constants.len();
    let mut base = Vec::new();
    for (pred, &arity) in program.predicates() {
        for mut code in 0..c.pow(arity as u32) {
            let mut args = vec![String::new(); arity];
            for slot in args.iter_mut().rev() {
                *slot = constants[code % c].clone();
                code /= c;
            }
            base.push(GroundAtom {
                predicate: pred.clone(),
                args,
            });
        }
    }
    base.sort();
    Ok(base)
}

/// Facts grouped by predicate.
struct Index<'a> {
    by_pred: HashMap<&'a str, Vec<&'a GroundAtom>>,
}

impl<'a> Index<'a> {
    fn new(facts: impl IntoIterator<Item = &'a GroundAtom>) -> Self {
        let mut by_pred: HashMap<&str, Vec<&GroundAtom>> = HashMap::new();
        for f in facts {
            by_pred.entry(f.predicate.as_str()).or_default().push(f);
        }
        Index { by_pred }
    }

    fn matching(&self, pred: &str) -> &[&'a GroundAtom] {
        self.by_pred.get(pred).map_or(&[], Vec::as_slice)
    }
}

type Bindings<'r> = Vec<(&'r str, &'r str)>;

fn lookup<'r>(b: &Bindings<'r>, v: &str) -> Option<&'r str> {
    b.iter().find(|(k, _)| *k == v).map(|(_, c)| *c)
}

/// Extends `b` so that `atom` matches `fact`; returns how many bindings were
/// pushed, or `None` on a clash (in which case `b` is restored).
fn unify<'r>(atom: &'r Atom, fact: &'r GroundAtom, b: &mut Bindings<'r>) -> Option<usize> {
    let start = b.len();
    for (t, c) in atom.args.iter().zip(&fact.args) {
        let ok = match t {
            Term::Const(k) => k == c,
            Term::Var(v) => match lookup(b, v) {
                Some(bound) => bound == c,
                None => {
                    b.push((v, c));
                    true
                }
            },
        };
        if !ok {
            b.truncate(start);
            return None;
        }
    }
    Some(b.len() - start)
}

fn instantiate(head: &Atom, b: &Bindings<'_>) -> GroundAtom {
    GroundAtom {
        predicate: head.predicate.clone(),
        args: head
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => c.clone(),
                Term::Var(v) => lookup(b, v)
                    .expect("rules are range-restricted")
                    .to_string(),
            })
            .collect(),
    }
}

/// Derives `head θ` for every θ with `body[k] θ ∈ sources[k]` for all `k`.
fn fire<'r>(
    rule: &'r Rule,
    sources: &[&Index<'r>],
    b: &mut Bindings<'r>,
    out: &mut Interpretation,
) {
    let depth = b.len();
    let k = rule.body.len() - sources.len();
    let Some((src, rest)) = sources.split_first() else {
        out.insert(instantiate(&rule.head, b));
        return;
    };
    let atom = &rule.body[k];
    for fact in src.matching(&atom.predicate) {
        if fact.args.len() != atom.args.len() {
            continue;
        }
        if unify(atom, fact, b).is_some() {
            fire(rule, rest, b, out);
            b.truncate(depth);
        }
    }
}

/// The immediate-consequence operator: heads of all rule instances whose
/// bodies hold in `interp`. Does not add `interp` itself.
pub fn tp_step(program: &Program, interp: &Interpretation) -> Interpretation {
    let index = Index::new(interp);
    let mut out = Interpretation::new();
    for rule in program.rules() {
        let sources = vec![&index; rule.body.len()];
        fire(rule, &sources, &mut Vec::new(), &mut out);
    }
    out
}

/// Every grounding substitution of the rule's variables over `constants`.
pub fn groundings<'r>(
    rule: &'r Rule,
    constants: &'r [String],
) -> impl Iterator<Item = Bindings<'r>> + 'r {
    let vars = rule.variables();
    let n = vars.len();
    let total = if n > 0 && constants.is_empty() {
        0
    } else {
        constants.len().pow(n as u32)
    };
    (0..total).map(move |mut code| {
        vars.iter()
            .map(|v| {
                let c = constants[code % constants.len().max(1)].as_str();
                code /= constants.len().max(1);
                (*v, c)
            })
            .collect()
    })
}

/// `T_P` computed by enumerating all substitutions over the program's
/// constants and testing each body instance for membership.
pub fn tp_step_by_substitution(program: &Program, interp: &Interpretation) -> Interpretation {
    let constants: Vec<String> = program.constants().iter().cloned().collect();
    let mut out = Interpretation::new();
    for rule in program.rules() {
        for theta in groundings(rule, &constants) {
            if rule
                .body
                .iter()
                .all(|a| interp.contains(&instantiate(a, &theta)))
            {
                out.insert(instantiate(&rule.head, &theta));
            }
        }
    }
    out
}

/// `M` is a model when every rule instance with its body in `M` has its head
/// in `M`, i.e. `T_P(M) ⊆ M`.
pub fn is_model(program: &Program, m: &Interpretation) -> bool {
    tp_step(program, m).is_subset(m)
}

/// `T_P` as an operator on the powerset of the Herbrand base.
pub fn tp_operator<'p>(program: &'p Program, cap: usize) -> Result<MonotoneOp<'p, GroundAtom>> {
    let base = herbrand_base(program, cap)?;
    Ok(MonotoneOp::new(PowersetLattice::new(base), move |i| {
        tp_step(program, i)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastModel {
    pub model: Interpretation,
    pub iterations: usize,
    pub run: KleeneRun<GroundAtom>,
}

impl LeastModel {
    pub fn deltas(&self) -> Vec<Vec<GroundAtom>> {
        self.run.deltas()
    }
}

/// Kleene iteration `I_0 = ∅, I_{n+1} = T_P(I_n)` until it stabilizes.
pub fn least_model(program: &Program, cap: usize) -> Result<LeastModel> {
    let op = tp_operator(program, cap)?;
    let run = kleene_lfp(&op)?;
    Ok(LeastModel {
        model: run.fixed_point.clone(),
        iterations: run.iterations,
        run,
    })
}

/// Delta-driven evaluation: after the first round, a rule instance is only
/// considered when at least one body atom comes from the previous round's
/// new facts.
pub fn semi_naive(program: &Program, cap: usize) -> Result<Interpretation> {
    let size = program.herbrand_size();
    if !size.is_some_and(|s| s <= cap as u128) {
        return Err(Error::StageExplosion {
            stage: 0,
            size: size.map_or_else(|| "overflow".into(), |s| s.to_string()),
            cap,
        });
    }
    let mut all = tp_step(program, &Interpretation::new());
    let mut delta = all.clone();
    let recursive: Vec<&Rule> = program
        .rules()
        .iter()
        .filter(|r| !r.body.is_empty())
        .collect();
    while !delta.is_empty() {
        let mut derived = Interpretation::new();
        {
            let full = Index::new(&all);
            let fresh = Index::new(&delta);
            for rule in &recursive {
                for k in 0..rule.body.len() {
                    let sources: Vec<&Index> = (0..rule.body.len())
                        .map(|j| if j == k { &fresh } else { &full })
                        .collect();
                    fire(rule, &sources, &mut Vec::new(), &mut derived);
                }
            }
        }
        delta = derived.into_iter().filter(|a| !all.contains(a)).collect();
        all.extend(delta.iter().cloned());
    }
    Ok(all)
}
