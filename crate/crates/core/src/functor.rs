//! Polynomial endofunctors on finite sets and their algebras.

use std::fmt;

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{compose, identity_fn, FinFn, FinSet, FunctionSpace};

/// Polynomial functor syntax: `0 | 1 | K | X | F + G | F * G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExpr {
    Zero,
    One,
    Const { name: String, set: FinSet },
    Id,
    Sum(Box<FunctorExpr>, Box<FunctorExpr>),
    Prod(Box<FunctorExpr>, Box<FunctorExpr>),
}

impl FunctorExpr {
    pub fn constant(name: impl Into<String>, set: FinSet) -> Self {
        FunctorExpr::Const {
            name: name.into(),
            set,
        }
    }

    pub fn sum(l: FunctorExpr, r: FunctorExpr) -> Self {
        FunctorExpr::Sum(Box::new(l), Box::new(r))
    }

    pub fn prod(l: FunctorExpr, r: FunctorExpr) -> Self {
        FunctorExpr::Prod(Box::new(l), Box::new(r))
    }

    /// `1 + X`, the natural numbers.
    pub fn naturals() -> Self {
        Self::sum(FunctorExpr::One, FunctorExpr::Id)
    }

    /// `1 + A * X`, finite lists over `A`.
    pub fn lists(name: impl Into<String>, alphabet: FinSet) -> Self {
        Self::sum(
            FunctorExpr::One,
            Self::prod(Self::constant(name, alphabet), FunctorExpr::Id),
        )
    }

    /// Action on objects. Sums are tagged with `L`/`R`, products are pairs.
    pub fn apply_obj(&self, x: &FinSet) -> FinSet {
        FinSet::new(self.elements_over(x))
    }

    fn elements_over(&self, x: &FinSet) -> Vec<Elem> {
        match self {
            FunctorExpr::Zero => Vec::new(),
            FunctorExpr::One => vec![Elem::Unit],
            FunctorExpr::Const { set, .. } => set.elements().to_vec(),
            FunctorExpr::Id => x.elements().to_vec(),
            FunctorExpr::Sum(l, r) => {
                let mut out: Vec<Elem> = l.elements_over(x).into_iter().map(Elem::inl).collect();
                out.extend(r.elements_over(x).into_iter().map(Elem::inr));
                out
            }
            FunctorExpr::Prod(l, r) => {
                let left = l.elements_over(x);
                let right = r.elements_over(x);
                let mut out = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        out.push(Elem::pair(a.clone(), b.clone()));
                    }
                }
                out
            }
        }
    }

    /// `|apply_obj(self, X)|` given `|X|`, without materializing; `None` on
    /// overflow.
    pub fn cardinality(&self, n: u128) -> Option<u128> {
        match self {
            FunctorExpr::Zero => Some(0),
            FunctorExpr::One => Some(1),
            FunctorExpr::Const { set, .. } => Some(set.len() as u128),
            FunctorExpr::Id => Some(n),
            FunctorExpr::Sum(l, r) => l.cardinality(n)?.checked_add(r.cardinality(n)?),
            FunctorExpr::Prod(l, r) => l.cardinality(n)?.checked_mul(r.cardinality(n)?),
        }
    }

    /// Rebuilds one layer of `elem`, replacing every `X`-position `x` with
    /// `at_id(x)` and leaving constant parts untouched.
    pub fn map_layer<F>(&self, elem: &Elem, at_id: &mut F) -> Result<Elem>
    where
        F: FnMut(&Elem) -> Result<Elem>,
    {
        let malformed = || Error::MalformedElement {
            element: elem.to_string(),
            functor: self.to_string(),
        };
        match (self, elem) {
            (FunctorExpr::One, Elem::Unit) => Ok(Elem::Unit),
            (FunctorExpr::Const { set, .. }, e) if set.contains(e) => Ok(e.clone()),
            (FunctorExpr::Id, e) => at_id(e),
            (FunctorExpr::Sum(l, _), Elem::Inl(e)) => Ok(Elem::inl(l.map_layer(e, at_id)?)),
            (FunctorExpr::Sum(_, r), Elem::Inr(e)) => Ok(Elem::inr(r.map_layer(e, at_id)?)),
            (FunctorExpr::Prod(l, r), Elem::Pair(a, b)) => {
                Ok(Elem::pair(l.map_layer(a, at_id)?, r.map_layer(b, at_id)?))
            }
            _ => Err(malformed()),
        }
    }

    /// Action on morphisms: `φ(f): φ(dom f) -> φ(cod f)`.
    pub fn apply_mor(&self, f: &FinFn) -> FinFn {
        let domain = self.apply_obj(f.domain());
        let codomain = self.apply_obj(f.codomain());
        FinFn::from_fn(domain, codomain, |e| {
            self.map_layer(e, &mut |x| {
                Ok(f.apply(x).expect("X-position lies in the domain").clone())
            })
        })
        .expect("lifted function lands in the lifted codomain")
    }

    /// Matches `1 + X` exactly.
    pub fn is_naturals_shape(&self) -> bool {
        matches!(self, FunctorExpr::Sum(l, r) if **l == FunctorExpr::One && **r == FunctorExpr::Id)
    }

    /// Matches `1 + A * X` and returns `A`.
    pub fn list_alphabet(&self) -> Option<&FinSet> {
        match self {
            FunctorExpr::Sum(l, r) if **l == FunctorExpr::One => match &**r {
                FunctorExpr::Prod(a, x) if **x == FunctorExpr::Id => match &**a {
                    FunctorExpr::Const { set, .. } => Some(set),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            FunctorExpr::Sum(..) => 0,
            FunctorExpr::Prod(..) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &FunctorExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            FunctorExpr::Zero => f.write_str("0"),
            FunctorExpr::One => f.write_str("1"),
            FunctorExpr::Const { name, .. } => f.write_str(name),
            FunctorExpr::Id => f.write_str("X"),
            FunctorExpr::Sum(l, r) => {
                child(f, l, 0)?;
                f.write_str(" + ")?;
                child(f, r, 1)
            }
            FunctorExpr::Prod(l, r) => {
                child(f, l, 1)?;
                f.write_str(" * ")?;
                child(f, r, 2)
            }
        }
    }
}

/// A carrier together with a structure map `φ(X) -> X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    functor: FunctorExpr,
    carrier: FinSet,
    structure: FinFn,
}

impl Algebra {
    pub fn new(functor: FunctorExpr, carrier: FinSet, structure: FinFn) -> Result<Self> {
        let expected = functor.apply_obj(&carrier);
        if structure.domain() != &expected {
            return Err(Error::DomainMismatch(format!(
                "structure map domain {} is not {}",
                structure.domain(),
                expected
            )));
        }
        if structure.codomain() != &carrier {
            return Err(Error::DomainMismatch(format!(
                "structure map codomain {} is not the carrier {}",
                structure.codomain(),
                carrier
            )));
        }
        Ok(Algebra {
            functor,
            carrier,
            structure,
        })
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn structure(&self) -> &FinFn {
        &self.structure
    }

    /// Every algebra with the given functor and carrier.
    pub fn all_on(functor: &FunctorExpr, carrier: &FinSet) -> impl Iterator<Item = Algebra> {
        let functor = functor.clone();
        let carrier = carrier.clone();
        let domain = functor.apply_obj(&carrier);
        FunctionSpace::new(&domain, &carrier).map(move |structure| Algebra {
            functor: functor.clone(),
            carrier: carrier.clone(),
            structure,
        })
    }
}

fn ensure_same_functor(a: &FunctorExpr, b: &FunctorExpr) -> Result<()> {
    if a != b {
        return Err(Error::FunctorMismatch {
            expected: a.to_string(),
            found: b.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn require_same_functor(a: &Algebra, b: &Algebra) -> Result<()> {
    ensure_same_functor(a.functor(), b.functor())
}

/// Checks the homomorphism square `h ∘ α = β ∘ φ(h)`.
pub fn is_homomorphism(h: &FinFn, source: &Algebra, target: &Algebra) -> Result<bool> {
    require_same_functor(source, target)?;
    let left = compose(h, source.structure())?;
    let right = compose(target.structure(), &source.functor().apply_mor(h))?;
    Ok(left == right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    Identity { set: FinSet },
    Composition { sample: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub identity_checks: usize,
    pub composition_checks: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `φ(id) = id` on every object touched by the samples and
/// `φ(g ∘ f) = φ(g) ∘ φ(f)` on every `(g, f)` pair.
pub fn check_functor_laws(functor: &FunctorExpr, samples: &[(FinFn, FinFn)]) -> Result<LawReport> {
    let mut report = LawReport::default();
    let mut seen: Vec<FinSet> = Vec::new();
    for (k, (g, f)) in samples.iter().enumerate() {
        let gf = compose(g, f)?;
        for set in [f.domain(), f.codomain(), g.codomain()] {
            if seen.contains(set) {
                continue;
            }
            seen.push(set.clone());
            report.identity_checks += 1;
            let lifted = functor.apply_mor(&identity_fn(set));
            if lifted != identity_fn(&functor.apply_obj(set)) {
                report
                    .violations
                    .push(LawViolation::Identity { set: set.clone() });
            }
        }
        report.composition_checks += 1;
        let lifted = functor.apply_mor(&gf);
        let composed = compose(&functor.apply_mor(g), &functor.apply_mor(f))?;
        if lifted != composed {
            report
                .violations
                .push(LawViolation::Composition { sample: k });
        }
    }
    Ok(report)
}

/// The sets `{x0, ..., x(n-1)}` for `n = 0..=max_size`.
pub fn sample_sets(max_size: usize) -> Vec<FinSet> {
    (0..=max_size)
        .map(|n| FinSet::atoms((0..n).map(|i| format!("x{i}"))))
        .collect()
}

/// Every composable pair `(g, f)` of functions among [`sample_sets`].
pub fn exhaustive_samples(max_size: usize) -> Vec<(FinFn, FinFn)> {
    let sets = sample_sets(max_size);
    let mut out = Vec::new();
    for a in &sets {
        for b in &sets {
            for c in &sets {
                let gs: Vec<FinFn> = FunctionSpace::new(b, c).collect();
                for f in FunctionSpace::new(a, b) {
                    for g in &gs {
                        out.push((g.clone(), f.clone()));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied())
    }

    #[test]
    fn apply_obj_examples() {
        let f = FunctorExpr::naturals();
        let out = f.apply_obj(&FinSet::empty());
        assert_eq!(out, FinSet::new([Elem::inl(Elem::Unit)]));

        let prod = FunctorExpr::prod(FunctorExpr::constant("A", a(&["a", "b"])), FunctorExpr::Id);
        let out = prod.apply_obj(&a(&["x", "y"]));
        assert_eq!(out.to_string(), "{(a,x), (a,y), (b,x), (b,y)}");

        let prod = FunctorExpr::prod(FunctorExpr::constant("A", a(&["a"])), FunctorExpr::Id);
        assert!(prod.apply_obj(&FinSet::empty()).is_empty());
    }

    #[test]
    fn apply_mor_examples() {
        let x = a(&["x"]);
        let y = a(&["y"]);
        let f = FinFn::from_fn(x.clone(), y.clone(), |_| Ok(Elem::atom("y"))).unwrap();
        assert_eq!(FunctorExpr::Id.apply_mor(&f), f);

        let k = FunctorExpr::constant("K", a(&["k1", "k2"]));
        assert_eq!(k.apply_mor(&f), identity_fn(&a(&["k1", "k2"])));

        let lifted = FunctorExpr::naturals().apply_mor(&f);
        assert_eq!(lifted.to_string(), "L(*) -> L(*)\nR(x) -> R(y)\n");
    }

    #[test]
    fn cardinality_matches_apply_obj() {
        let f = FunctorExpr::lists("A", a(&["a", "b"]));
        let x = a(&["p", "q", "r"]);
        assert_eq!(f.cardinality(3), Some(f.apply_obj(&x).len() as u128));
    }

    #[test]
    fn display_respects_precedence() {
        let f = FunctorExpr::prod(
            FunctorExpr::sum(FunctorExpr::One, FunctorExpr::Id),
            FunctorExpr::Id,
        );
        assert_eq!(f.to_string(), "(1 + X) * X");
        assert_eq!(FunctorExpr::lists("A", a(&["a"])).to_string(), "1 + A * X");
    }

    #[test]
    fn laws_hold_for_identity_functor() {
        let report = check_functor_laws(&FunctorExpr::Id, &exhaustive_samples(1)).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn laws_hold_for_one_plus_x_over_two() {
        let report = check_functor_laws(&FunctorExpr::naturals(), &exhaustive_samples(2)).unwrap();
        assert!(report.holds());
        assert!(report.composition_checks > 0);
    }

    #[test]
    fn laws_reject_non_composable_samples() {
        let x = a(&["x"]);
        let y = a(&["y"]);
        let f = FinFn::from_fn(x.clone(), y, |_| Ok(Elem::atom("y"))).unwrap();
        let err = check_functor_laws(&FunctorExpr::Id, &[(f.clone(), f)]);
        assert!(matches!(err, Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn algebra_validates_structure_map() {
        let k = a(&["k"]);
        let f = FunctorExpr::constant("K", k.clone());
        let bad = identity_fn(&a(&["z"]));
        assert!(Algebra::new(f.clone(), k.clone(), bad).is_err());
        assert!(Algebra::new(f, k.clone(), identity_fn(&k)).is_ok());
    }

    #[test]
    fn shape_detection() {
        assert!(FunctorExpr::naturals().is_naturals_shape());
        let l = FunctorExpr::lists("A", a(&["a"]));
        assert_eq!(l.list_alphabet(), Some(&a(&["a"])));
        assert!(FunctorExpr::Id.list_alphabet().is_none());
    }
}
