//! Least fixed points of monotone operators on finite powerset lattices.
//!
//! Kleene iteration from `∅` is the initial chain of the operator read in the
//! poset category: stage `n+1` is `step(stage n)`, links are inclusions, and
//! the limit stage is the union of the trace. In a finite lattice the chain
//! stops growing after at most `|universe|` productive steps, so the union is
//! the last stage.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest universe for which subsets are enumerated exhaustively.
pub const EXHAUSTIVE_CAP: usize = 12;
/// Subset pairs drawn when the universe is too large for exhaustive checks.
pub const DEFAULT_SAMPLES: usize = 4096;
const SAMPLE_SEED: u64 = 0x006d_7566_6978;

pub type Subset<T> = BTreeSet<T>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowersetLattice<T> {
    universe: Vec<T>,
}

impl<T: Ord + Clone> PowersetLattice<T> {
    pub fn new<I: IntoIterator<Item = T>>(universe: I) -> Self {
        let set: BTreeSet<T> = universe.into_iter().collect();
        PowersetLattice {
            universe: set.into_iter().collect(),
        }
    }

    pub fn universe(&self) -> &[T] {
        &self.universe
    }

    pub fn bottom(&self) -> Subset<T> {
        BTreeSet::new()
    }

    pub fn top(&self) -> Subset<T> {
        self.universe.iter().cloned().collect()
    }

    pub fn contains_subset(&self, s: &Subset<T>) -> bool {
        s.iter().all(|x| self.universe.binary_search(x).is_ok())
    }

    fn subset_of_mask(&self, mask: u64) -> Subset<T> {
        self.universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    }

    /// Bit mask of `s` plus whatever lies outside the universe.
    fn mask_of_subset(&self, s: &Subset<T>) -> (u64, Vec<T>) {
        let mut mask = 0u64;
        let mut outside = Vec::new();
        for x in s {
            match self.universe.binary_search(x) {
                Ok(i) => mask |= 1 << i,
                Err(_) => outside.push(x.clone()),
            }
        }
        (mask, outside)
    }
}

/// An operator on the subsets of a lattice's universe, given extensionally.
pub struct MonotoneOp<'a, T> {
    lattice: PowersetLattice<T>,
    step: Box<dyn Fn(&Subset<T>) -> Subset<T> + 'a>,
}

impl<'a, T: Ord + Clone> MonotoneOp<'a, T> {
    pub fn new<F>(lattice: PowersetLattice<T>, step: F) -> Self
    where
        F: Fn(&Subset<T>) -> Subset<T> + 'a,
    {
        MonotoneOp {
            lattice,
            step: Box::new(step),
        }
    }

    pub fn lattice(&self) -> &PowersetLattice<T> {
        &self.lattice
    }

    pub fn apply(&self, s: &Subset<T>) -> Subset<T> {
        (self.step)(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleeneRun<T> {
    pub fixed_point: Subset<T>,
    /// Number of steps that added at least one element.
    pub iterations: usize,
    /// `I_0 = ∅, I_1, ..., I_k, I_{k+1} = I_k`.
    pub trace: Vec<Subset<T>>,
}

impl<T: Ord + Clone> KleeneRun<T> {
    /// Elements added by each productive step.
    pub fn deltas(&self) -> Vec<Vec<T>> {
        self.trace
            .windows(2)
            .take(self.iterations)
            .map(|w| w[1].difference(&w[0]).cloned().collect())
            .collect()
    }

    /// `⋃ trace`, the limit stage of the chain.
    pub fn union(&self) -> Subset<T> {
        self.trace.iter().flatten().cloned().collect()
    }
}

impl<T: Ord + Clone + fmt::Display> fmt::Display for KleeneRun<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, delta) in self.deltas().iter().enumerate() {
            let parts: Vec<String> = delta.iter().map(T::to_string).collect();
            writeln!(f, "I_{} = I_{} + {{{}}}", n + 1, n, parts.join(", "))?;
        }
        writeln!(
            f,
            "I_{} = I_{}: limit stage reached, I_omega is the union of the chain",
            self.iterations + 1,
            self.iterations
        )?;
        let parts: Vec<String> = self.fixed_point.iter().map(T::to_string).collect();
        writeln!(f, "fixed point: {{{}}}", parts.join(", "))
    }
}

fn render<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Iterates `I_{n+1} = step(I_n)` from `∅` until the stage repeats.
pub fn kleene_lfp<T: Ord + Clone + fmt::Display>(op: &MonotoneOp<'_, T>) -> Result<KleeneRun<T>> {
    let mut trace = vec![op.lattice.bottom()];
    loop {
        let current = trace.last().expect("trace starts with bottom");
        let next = op.apply(current);
        if let Some(x) = next
            .iter()
            .find(|x| op.lattice.universe.binary_search(x).is_err())
        {
            return Err(Error::OutsideUniverse {
                element: x.to_string(),
            });
        }
        if !current.is_subset(&next) {
            return Err(Error::NotAscending {
                iteration: trace.len() - 1,
                lost: render(current.difference(&next)),
            });
        }
        let done = next.len() == current.len();
        trace.push(next);
        if done {
            break;
        }
    }
    let iterations = trace.len() - 2;
    Ok(KleeneRun {
        fixed_point: trace.last().cloned().unwrap_or_default(),
        iterations,
        trace,
    })
}

pub fn check_fixed<T: Ord + Clone>(op: &MonotoneOp<'_, T>, s: &Subset<T>) -> bool {
    op.apply(s) == *s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneReport<T> {
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub violation_count: u64,
    /// The first few violating `(I, J)` pairs with `I ⊆ J`.
    pub violations: Vec<(Subset<T>, Subset<T>)>,
    /// Elements the operator produced outside the universe, if any.
    pub outside_universe: Vec<T>,
}

impl<T> MonotoneReport<T> {
    pub fn is_monotone(&self) -> bool {
        self.violation_count == 0 && self.outside_universe.is_empty()
    }
}

const KEPT_VIOLATIONS: usize = 8;

/// Checks `I ⊆ J ⇒ step(I) ⊆ step(J)`, over every pair when the universe has
/// at most `cap` elements and over `samples` seeded random pairs otherwise.
pub fn check_monotone<T: Ord + Clone>(
    op: &MonotoneOp<'_, T>,
    cap: usize,
    samples: usize,
) -> MonotoneReport<T> {
    let lattice = &op.lattice;
    let n = lattice.universe.len();
    let mut report = MonotoneReport {
        exhaustive: n <= cap.min(20),
        pairs_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        outside_universe: Vec::new(),
    };
    let record = |report: &mut MonotoneReport<T>, i: &Subset<T>, j: &Subset<T>, ok: bool| {
        report.pairs_checked += 1;
        if !ok {
            report.violation_count += 1;
            if report.violations.len() < KEPT_VIOLATIONS {
                report.violations.push((i.clone(), j.clone()));
            }
        }
    };
    if report.exhaustive {
        let images: Vec<u64> = (0..1u64 << n)
            .map(|m| {
                let (mask, outside) = lattice.mask_of_subset(&op.apply(&lattice.subset_of_mask(m)));
                report.outside_universe.extend(outside);
                mask
            })
            .collect();
        for j in 0..1u64 << n {
            // every submask of j, including 0 and j itself
            let mut i = j;
            loop {
                let ok = images[i as usize] & !images[j as usize] == 0;
                if ok {
                    report.pairs_checked += 1;
                } else {
                    let (si, sj) = (lattice.subset_of_mask(i), lattice.subset_of_mask(j));
                    record(&mut report, &si, &sj, false);
                }
                if i == 0 {
                    break;
                }
                i = (i - 1) & j;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..samples {
            let mut big = Subset::new();
            let mut small = Subset::new();
            for x in &lattice.universe {
                if rng.gen_bool(0.5) {
                    big.insert(x.clone());
                    if rng.gen_bool(0.5) {
                        small.insert(x.clone());
                    }
                }
            }
            let (fi, fj) = (op.apply(&small), op.apply(&big));
            for s in [&fi, &fj] {
                report.outside_universe.extend(lattice.mask_of_subset(s).1);
            }
            record(&mut report, &small, &big, fi.is_subset(&fj));
        }
    }
    report.outside_universe.sort();
    report.outside_universe.dedup();
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastReport<T> {
    pub fixed_points: Vec<Subset<T>>,
    pub candidate_is_fixed: bool,
    /// Fixed points that do not contain the candidate.
    pub counterexamples: Vec<Subset<T>>,
}

impl<T> LeastReport<T> {
    pub fn is_least(&self) -> bool {
        self.candidate_is_fixed && self.counterexamples.is_empty()
    }
}

/// Enumerates every subset, collects the fixed points, and checks that the
/// candidate is one of them and lies below all the others.
pub fn check_least<T: Ord + Clone>(
    op: &MonotoneOp<'_, T>,
    candidate: &Subset<T>,
    cap: usize,
) -> Result<LeastReport<T>> {
    let lattice = &op.lattice;
    let n = lattice.universe.len();
    if n > cap || n > 30 {
        return Err(Error::EnumerationTooLarge {
            count: format!("2^{n}"),
            cap,
        });
    }
    let fixed_points: Vec<Subset<T>> = (0..1u64 << n)
        .map(|m| lattice.subset_of_mask(m))
        .filter(|s| check_fixed(op, s))
        .collect();
    let counterexamples = fixed_points
        .iter()
        .filter(|s| !candidate.is_subset(s))
        .cloned()
        .collect();
    Ok(LeastReport {
        candidate_is_fixed: lattice.contains_subset(candidate) && check_fixed(op, candidate),
        fixed_points,
        counterexamples,
    })
}
