//! The initial chain `0 -> φ(0) -> φ²(0) -> ...`, convergence detection,
//! initial-algebra extraction and stage-wise folds.
//!
//! For polynomial functors every link is an inclusion, so a bijective link at
//! stage `n` means `X_n = X_{n+1}` and the chain is constant from there on.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{compose, FinFn, FinSet, FunctionSpace, Iso};
use crate::functor::{is_homomorphism, require_same_functor, Algebra, FunctorExpr};

pub const DEFAULT_MAX_STAGE: usize = 64;
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainConfig {
    pub max_stage: usize,
    /// Largest stage cardinality (and largest brute-force enumeration) allowed.
    pub cap: usize,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            max_stage: DEFAULT_MAX_STAGE,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chain {
    functor: FunctorExpr,
    stages: Vec<FinSet>,
    links: Vec<FinFn>,
    max_stage: usize,
}

impl Chain {
    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn stages(&self) -> &[FinSet] {
        &self.stages
    }

    /// `links[n]: X_n -> X_{n+1}`.
    pub fn links(&self) -> &[FinFn] {
        &self.links
    }

    pub fn max_stage(&self) -> usize {
        self.max_stage
    }

    pub fn stage_sizes(&self) -> Vec<usize> {
        self.stages.iter().map(FinSet::len).collect()
    }

    /// The canonical map `X_from -> X_to` obtained by composing links.
    pub fn connecting_map(&self, from: usize, to: usize) -> Result<FinFn> {
        if from > to || to >= self.stages.len() {
            return Err(Error::InvalidConfig(format!(
                "no connecting map from stage {from} to stage {to}"
            )));
        }
        let mut acc = crate::finset::identity_fn(&self.stages[from]);
        for link in &self.links[from..to] {
            acc = compose(link, &acc)?;
        }
        Ok(acc)
    }
}

/// Computes stages `0..=max_stage` and links `0..max_stage`, stopping right
/// after the first bijective link.
pub fn build_chain(functor: &FunctorExpr, config: ChainConfig) -> Result<Chain> {
    if config.max_stage == 0 {
        return Err(Error::InvalidConfig("max_stage must be at least 1".into()));
    }
    let mut stages = vec![FinSet::empty()];
    let mut links: Vec<FinFn> = Vec::new();
    for n in 0..config.max_stage {
        let current = &stages[n];
        let size = functor.cardinality(current.len() as u128);
        match size {
            Some(s) if s <= config.cap as u128 => {}
            _ => {
                return Err(Error::StageExplosion {
                    stage: n + 1,
                    size: size.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
                    cap: config.cap,
                })
            }
        }
        let next = functor.apply_obj(current);
        let link = match links.last() {
            None => FinFn::empty(next.clone()),
            Some(prev) => functor.apply_mor(prev),
        };
        debug_assert_eq!(link.codomain(), &next);
        let done = link.is_bijection();
        stages.push(next);
        links.push(link);
        if done {
            break;
        }
    }
    Ok(Chain {
        functor: functor.clone(),
        stages,
        links,
        max_stage: config.max_stage,
    })
}

/// Least `n` whose link is a bijection.
pub fn detect_convergence(chain: &Chain) -> Option<usize> {
    chain.links.iter().position(FinFn::is_bijection)
}

/// An initial algebra read off a converged chain.
#[derive(Clone, Debug)]
pub struct InitialAlgebra {
    chain: Chain,
    stage: usize,
    algebra: Algebra,
    lambek_iso: Iso,
}

impl InitialAlgebra {
    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    /// The convergence stage.
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// `X_Λ ≅ φ(X_Λ)`: forward is the link, backward the structure map.
    pub fn lambek_iso(&self) -> &Iso {
        &self.lambek_iso
    }

    pub fn fold(&self, target: &Algebra) -> Result<FinFn> {
        fold_via_chain(&self.chain, self.stage, target)
    }
}

pub fn extract_initial_algebra(chain: &Chain, stage: usize) -> Result<InitialAlgebra> {
    let link = chain
        .links
        .get(stage)
        .ok_or(Error::NotConverged { stage })?;
    let iso = Iso::from_bijection(link.clone()).map_err(|_| Error::NotConverged { stage })?;
    let algebra = Algebra::new(
        chain.functor.clone(),
        chain.stages[stage].clone(),
        iso.backward().clone(),
    )?;
    Ok(InitialAlgebra {
        chain: chain.clone(),
        stage,
        algebra,
        lambek_iso: iso,
    })
}

#[derive(Clone, Debug)]
pub struct ChainResult {
    pub chain: Chain,
    pub converged_at: Option<usize>,
    pub initial: Option<InitialAlgebra>,
}

/// Builds the chain and extracts the initial algebra when it converges.
pub fn run_chain(functor: &FunctorExpr, config: ChainConfig) -> Result<ChainResult> {
    let chain = build_chain(functor, config)?;
    let converged_at = detect_convergence(&chain);
    let initial = converged_at
        .map(|s| extract_initial_algebra(&chain, s))
        .transpose()?;
    Ok(ChainResult {
        chain,
        converged_at,
        initial,
    })
}

/// Builds the chain and insists on convergence within the budget.
pub fn initial_algebra(functor: &FunctorExpr, config: ChainConfig) -> Result<InitialAlgebra> {
    run_chain(functor, config)?
        .initial
        .ok_or(Error::NoConvergence {
            max_stage: config.max_stage,
        })
}

/// `f_0 = ∅ -> Y`, `f_{n+1} = β ∘ φ(f_n)`, returning `f_Λ: X_Λ -> Y`.
pub fn fold_via_chain(chain: &Chain, stage: usize, target: &Algebra) -> Result<FinFn> {
    if target.functor() != &chain.functor {
        return Err(Error::FunctorMismatch {
            expected: chain.functor.to_string(),
            found: target.functor().to_string(),
        });
    }
    if !chain.links.get(stage).is_some_and(FinFn::is_bijection) {
        return Err(Error::NotConverged { stage });
    }
    let mut f = FinFn::empty(target.carrier().clone());
    for _ in 0..stage {
        f = compose(target.structure(), &chain.functor.apply_mor(&f))?;
    }
    debug_assert_eq!(f.domain(), &chain.stages[stage]);
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct HomReport {
    pub candidates: u128,
    pub homomorphisms: Vec<FinFn>,
}

impl HomReport {
    pub fn count(&self) -> usize {
        self.homomorphisms.len()
    }

    pub fn unique(&self) -> Option<&FinFn> {
        match self.homomorphisms.as_slice() {
            [h] => Some(h),
            _ => None,
        }
    }
}

/// Enumerates all functions `source.carrier -> target.carrier` and keeps the
/// algebra homomorphisms.
pub fn unique_hom_check(source: &Algebra, target: &Algebra, cap: usize) -> Result<HomReport> {
    require_same_functor(source, target)?;
    let candidates = FunctionSpace::size(source.carrier(), target.carrier());
    match candidates {
        Some(c) if c <= cap as u128 => {}
        _ => {
            return Err(Error::EnumerationTooLarge {
                count: candidates.map_or_else(|| "overflow".into(), |c| c.to_string()),
                cap,
            })
        }
    }
    let mut homomorphisms = Vec::new();
    for h in FunctionSpace::new(source.carrier(), target.carrier()) {
        if is_homomorphism(&h, source, target)? {
            homomorphisms.push(h);
        }
    }
    Ok(HomReport {
        candidates: candidates.unwrap_or_default(),
        homomorphisms,
    })
}

/// The unique map from the initial algebra into a fixed point `X ≅ φ(X)`,
/// given `theta: X -> φ(X)`.
pub fn morphism_to_fixed_point(initial: &InitialAlgebra, x: &FinSet, theta: &Iso) -> Result<FinFn> {
    let functor = initial.algebra.functor();
    if theta.forward().domain() != x {
        return Err(Error::NotAnIso(format!(
            "theta is defined on {}, not on {x}",
            theta.forward().domain()
        )));
    }
    let fx = functor.apply_obj(x);
    if theta.forward().codomain() != &fx {
        return Err(Error::FunctorMismatch {
            expected: fx.to_string(),
            found: theta.forward().codomain().to_string(),
        });
    }
    let target = Algebra::new(functor.clone(), x.clone(), theta.backward().clone())?;
    initial.fold(&target)
}

impl fmt::Display for ChainResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "functor: {}", self.chain.functor)?;
        writeln!(f, "stage  size")?;
        for (n, s) in self.chain.stages.iter().enumerate() {
            writeln!(f, "{n:>5}  {}", s.len())?;
        }
        match &self.initial {
            Some(init) => {
                writeln!(f, "converged at stage {}", init.stage)?;
                writeln!(f, "carrier: {}", init.algebra.carrier())?;
                writeln!(f, "structure map:")?;
                write!(f, "{}", init.algebra.structure())
            }
            None => writeln!(
                f,
                "no convergence within budget ({} stages)",
                self.chain.max_stage
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::Elem;
    use crate::finset::identity_fn;

    fn atoms(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied())
    }

    fn konst() -> FunctorExpr {
        FunctorExpr::constant("K", atoms(&["k1", "k2"]))
    }

    fn a_times_x() -> FunctorExpr {
        FunctorExpr::prod(FunctorExpr::constant("A", atoms(&["a"])), FunctorExpr::Id)
    }

    fn zero_plus_k() -> FunctorExpr {
        FunctorExpr::sum(FunctorExpr::Zero, FunctorExpr::constant("K", atoms(&["k"])))
    }

    fn cfg(max_stage: usize) -> ChainConfig {
        ChainConfig {
            max_stage,
            ..ChainConfig::default()
        }
    }

    #[test]
    fn constant_chain() {
        let chain = build_chain(&konst(), cfg(10)).unwrap();
        assert_eq!(chain.stage_sizes(), vec![0, 2, 2]);
        assert_eq!(chain.links()[1], identity_fn(&atoms(&["k1", "k2"])));
        assert_eq!(detect_convergence(&chain), Some(1));
    }

    #[test]
    fn product_with_empty_converges_immediately() {
        let chain = build_chain(&a_times_x(), cfg(10)).unwrap();
        assert_eq!(chain.stage_sizes(), vec![0, 0]);
        assert_eq!(detect_convergence(&chain), Some(0));
    }

    #[test]
    fn naturals_never_converge() {
        let chain = build_chain(&FunctorExpr::naturals(), cfg(5)).unwrap();
        assert_eq!(chain.stage_sizes(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(chain.links().len(), 5);
        assert_eq!(detect_convergence(&chain), None);
    }

    #[test]
    fn zero_max_stage_is_rejected() {
        assert!(matches!(
            build_chain(&FunctorExpr::Id, cfg(0)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn explosion_is_reported() {
        let f = FunctorExpr::sum(
            FunctorExpr::One,
            FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id),
        );
        let err = build_chain(
            &f,
            ChainConfig {
                max_stage: 64,
                cap: 1000,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::StageExplosion { .. }));
    }

    #[test]
    fn extraction_examples() {
        let init = initial_algebra(&konst(), cfg(10)).unwrap();
        assert_eq!(init.algebra().carrier(), &atoms(&["k1", "k2"]));
        assert!(init.algebra().structure().is_identity());

        let init = initial_algebra(&a_times_x(), cfg(10)).unwrap();
        assert!(init.algebra().carrier().is_empty());
        assert!(init.algebra().structure().domain().is_empty());

        // X_1 = φ(∅) = {R(k)} already, so the carrier keeps the tag and the
        // inverse link is the identity.
        let init = initial_algebra(&zero_plus_k(), cfg(10)).unwrap();
        assert_eq!(init.stage(), 1);
        assert_eq!(init.algebra().carrier().to_string(), "{R(k)}");
        assert_eq!(init.algebra().structure().to_string(), "R(k) -> R(k)\n");
    }

    #[test]
    fn extraction_requires_bijective_link() {
        let chain = build_chain(&konst(), cfg(10)).unwrap();
        assert!(matches!(
            extract_initial_algebra(&chain, 0),
            Err(Error::NotConverged { stage: 0 })
        ));
        assert!(matches!(
            extract_initial_algebra(&chain, 7),
            Err(Error::NotConverged { stage: 7 })
        ));
    }

    #[test]
    fn fold_examples() {
        let uv = atoms(&["u", "v"]);
        let beta = FinFn::from_pairs(
            atoms(&["k1", "k2"]),
            uv.clone(),
            [
                (Elem::atom("k1"), Elem::atom("u")),
                (Elem::atom("k2"), Elem::atom("v")),
            ],
        )
        .unwrap();
        let target = Algebra::new(konst(), uv, beta.clone()).unwrap();
        let fold = initial_algebra(&konst(), cfg(10))
            .unwrap()
            .fold(&target)
            .unwrap();
        assert_eq!(fold, beta);

        let y = atoms(&["y"]);
        let target = Algebra::new(
            a_times_x(),
            y.clone(),
            FinFn::from_fn(a_times_x().apply_obj(&y), y.clone(), |_| {
                Ok(Elem::atom("y"))
            })
            .unwrap(),
        )
        .unwrap();
        let fold = initial_algebra(&a_times_x(), cfg(10))
            .unwrap()
            .fold(&target)
            .unwrap();
        assert!(fold.domain().is_empty());

        let target = Algebra::new(
            zero_plus_k(),
            y.clone(),
            FinFn::from_fn(zero_plus_k().apply_obj(&y), y, |_| Ok(Elem::atom("y"))).unwrap(),
        )
        .unwrap();
        let fold = initial_algebra(&zero_plus_k(), cfg(10))
            .unwrap()
            .fold(&target)
            .unwrap();
        assert_eq!(fold.to_string(), "R(k) -> y\n");
    }

    #[test]
    fn fold_rejects_other_functor() {
        let init = initial_algebra(&konst(), cfg(10)).unwrap();
        let other = initial_algebra(&a_times_x(), cfg(10)).unwrap();
        assert!(matches!(
            init.fold(other.algebra()),
            Err(Error::FunctorMismatch { .. })
        ));
    }

    #[test]
    fn unique_hom_examples() {
        let init = initial_algebra(&konst(), cfg(10)).unwrap();
        let uv = atoms(&["u", "v"]);
        for target in Algebra::all_on(&konst(), &uv) {
            let report = unique_hom_check(init.algebra(), &target, DEFAULT_CAP).unwrap();
            assert_eq!(report.unique(), Some(target.structure()));
        }

        let init = initial_algebra(&a_times_x(), cfg(10)).unwrap();
        for target in Algebra::all_on(&a_times_x(), &uv) {
            let report = unique_hom_check(init.algebra(), &target, DEFAULT_CAP).unwrap();
            assert_eq!(report.count(), 1);
        }

        let init = initial_algebra(&zero_plus_k(), cfg(10)).unwrap();
        for target in Algebra::all_on(&zero_plus_k(), &uv) {
            let report = unique_hom_check(init.algebra(), &target, DEFAULT_CAP).unwrap();
            assert_eq!(report.unique(), Some(&init.fold(&target).unwrap()));
        }
    }

    #[test]
    fn unique_hom_respects_cap() {
        let big = FinSet::atoms((0..10).map(|i| format!("k{i}")));
        let f = FunctorExpr::constant("K", big.clone());
        let init = initial_algebra(&f, cfg(10)).unwrap();
        let target = Algebra::new(f, big.clone(), identity_fn(&big)).unwrap();
        assert!(matches!(
            unique_hom_check(init.algebra(), &target, 1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn fixed_point_examples() {
        let k = atoms(&["k1", "k2"]);
        let init = initial_algebra(&konst(), cfg(10)).unwrap();
        let theta = Iso::from_bijection(identity_fn(&k)).unwrap();
        assert_eq!(
            morphism_to_fixed_point(&init, &k, &theta).unwrap(),
            identity_fn(&k)
        );

        let init = initial_algebra(&a_times_x(), cfg(10)).unwrap();
        let theta = Iso::from_bijection(FinFn::empty(FinSet::empty())).unwrap();
        let u = morphism_to_fixed_point(&init, &FinSet::empty(), &theta).unwrap();
        assert!(u.domain().is_empty());

        let z = atoms(&["z"]);
        let forward = FinFn::from_fn(z.clone(), zero_plus_k().apply_obj(&z), |_| {
            Ok(Elem::inr(Elem::atom("k")))
        })
        .unwrap();
        let init = initial_algebra(&zero_plus_k(), cfg(10)).unwrap();
        let u = morphism_to_fixed_point(&init, &z, &Iso::from_bijection(forward).unwrap()).unwrap();
        assert_eq!(u.to_string(), "R(k) -> z\n");
    }

    #[test]
    fn fixed_point_rejects_wrong_theta() {
        let k = atoms(&["k1", "k2"]);
        let init = initial_algebra(&konst(), cfg(10)).unwrap();
        let other = atoms(&["p", "q"]);
        let theta = Iso::from_bijection(identity_fn(&other)).unwrap();
        assert!(morphism_to_fixed_point(&init, &k, &theta).is_err());
    }

    #[test]
    fn connecting_maps_compose_links() {
        let chain = build_chain(&FunctorExpr::naturals(), cfg(4)).unwrap();
        let m = chain.connecting_map(1, 4).unwrap();
        assert_eq!(m.domain().len(), 1);
        assert_eq!(m.codomain().len(), 4);
        assert!(m.is_injective());
        let a = chain.connecting_map(1, 2).unwrap();
        let b = chain.connecting_map(2, 4).unwrap();
        assert_eq!(compose(&b, &a).unwrap(), m);
    }

    #[test]
    fn report_mentions_budget() {
        let r = run_chain(&FunctorExpr::naturals(), cfg(3)).unwrap();
        assert!(r.to_string().contains("no convergence within budget"));
        let r = run_chain(&konst(), cfg(3)).unwrap();
        assert!(r.to_string().contains("k1 -> k1"));
    }
}
