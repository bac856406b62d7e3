//! The concrete category of finite sets and total functions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::elem::Elem;
use crate::error::{Error, Result};

/// A finite, duplicate-free set of elements kept in canonical order.
///
/// Two sets are equal exactly when they hold the same elements; because the
/// order is canonical this is positional equality.
#[derive(Clone)]
pub struct FinSet(Arc<SetInner>);

struct SetInner {
    elems: Vec<Elem>,
    index: HashMap<Elem, usize>,
}

impl FinSet {
    pub fn new<I: IntoIterator<Item = Elem>>(elems: I) -> Self {
        let mut elems: Vec<Elem> = elems.into_iter().collect();
        elems.sort_by_cached_key(Elem::canonical);
        elems.dedup();
        Self::from_sorted(elems)
    }

    fn from_sorted(elems: Vec<Elem>) -> Self {
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        FinSet(Arc::new(SetInner { elems, index }))
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// A set of atoms, e.g. `FinSet::atoms(["a", "b"])`.
    pub fn atoms<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        Self::new(names.into_iter().map(|n| Elem::Atom(n.into())))
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.0.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.0.elems.iter()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.0.index.contains_key(e)
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.0.index.get(e).copied()
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.len() <= other.len() && self.iter().all(|e| other.contains(e))
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elems == other.0.elems
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Elem;
    type IntoIter = std::slice::Iter<'a, Elem>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl FromIterator<Elem> for FinSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

/// A total function between finite sets, stored as codomain indices laid out
/// in domain order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFn {
    domain: FinSet,
    codomain: FinSet,
    images: Vec<usize>,
}

impl FinFn {
    /// Builds a function from explicit `(argument, value)` pairs, checking
    /// totality, closure and consistency.
    pub fn from_pairs<I>(domain: FinSet, codomain: FinSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Elem, Elem)>,
    {
        let mut images: Vec<Option<usize>> = vec![None; domain.len()];
        for (x, y) in pairs {
            let i = domain.index_of(&x).ok_or_else(|| Error::NotInDomain {
                element: x.to_string(),
            })?;
            let j = codomain
                .index_of(&y)
                .ok_or_else(|| Error::OutsideCodomain {
                    element: x.to_string(),
                    value: y.to_string(),
                })?;
            match images[i] {
                Some(prev) if prev != j => {
                    return Err(Error::ConflictingAssignment {
                        element: x.to_string(),
                        first: codomain.elements()[prev].to_string(),
                        second: y.to_string(),
                    })
                }
                _ => images[i] = Some(j),
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::NotTotal {
                    element: domain.elements()[i].to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFn {
            domain,
            codomain,
            images,
        })
    }

    /// Builds a function by evaluating `f` on every domain element.
    pub fn from_fn<F>(domain: FinSet, codomain: FinSet, mut f: F) -> Result<Self>
    where
        F: FnMut(&Elem) -> Result<Elem>,
    {
        let images = domain
            .iter()
            .map(|x| {
                let y = f(x)?;
                codomain.index_of(&y).ok_or_else(|| Error::OutsideCodomain {
                    element: x.to_string(),
                    value: y.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFn {
            domain,
            codomain,
            images,
        })
    }

    /// The unique function out of the empty set.
    pub fn empty(codomain: FinSet) -> Self {
        FinFn {
            domain: FinSet::empty(),
            codomain,
            images: Vec::new(),
        }
    }

    pub(crate) fn from_indices(domain: FinSet, codomain: FinSet, images: Vec<usize>) -> Self {
        debug_assert_eq!(domain.len(), images.len());
        debug_assert!(images.iter().all(|&j| j < codomain.len()));
        FinFn {
            domain,
            codomain,
            images,
        }
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn apply(&self, x: &Elem) -> Option<&Elem> {
        self.domain
            .index_of(x)
            .map(|i| &self.codomain.elements()[self.images[i]])
    }

    pub fn image_indices(&self) -> &[usize] {
        &self.images
    }

    /// `(argument, value)` pairs in canonical domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Elem, &Elem)> + '_ {
        self.domain
            .iter()
            .zip(&self.images)
            .map(|(x, &j)| (x, &self.codomain.elements()[j]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.images
            .iter()
            .all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &j in &self.images {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFn> {
        if !self.is_bijection() {
            return None;
        }
        let mut back = vec![0; self.codomain.len()];
        for (i, &j) in self.images.iter().enumerate() {
            back[j] = i;
        }
        Some(FinFn::from_indices(
            self.codomain.clone(),
            self.domain.clone(),
            back,
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// Renders one `x -> y` line per domain element.
impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in self.pairs() {
            writeln!(f, "{x} -> {y}")?;
        }
        Ok(())
    }
}

pub fn identity_fn(x: &FinSet) -> FinFn {
    FinFn::from_indices(x.clone(), x.clone(), (0..x.len()).collect())
}

/// `g ∘ f`; requires `f.codomain == g.domain`.
pub fn compose(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.codomain != g.domain {
        return Err(Error::DomainMismatch(format!(
            "cannot compose: codomain {} differs from domain {}",
            f.codomain, g.domain
        )));
    }
    let images = f.images.iter().map(|&j| g.images[j]).collect();
    Ok(FinFn::from_indices(
        f.domain.clone(),
        g.codomain.clone(),
        images,
    ))
}

pub fn is_bijection(f: &FinFn) -> bool {
    f.is_bijection()
}

/// An isomorphism witnessed by both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    forward: FinFn,
    backward: FinFn,
}

impl Iso {
    pub fn new(forward: FinFn, backward: FinFn) -> Result<Self> {
        let there_and_back =
            compose(&backward, &forward).map_err(|e| Error::NotAnIso(e.to_string()))?;
        let back_and_there =
            compose(&forward, &backward).map_err(|e| Error::NotAnIso(e.to_string()))?;
        if !there_and_back.is_identity() || !back_and_there.is_identity() {
            return Err(Error::NotAnIso("composites are not identities".to_string()));
        }
        Ok(Iso { forward, backward })
    }

    pub fn from_bijection(forward: FinFn) -> Result<Self> {
        let backward = forward
            .inverse()
            .ok_or_else(|| Error::NotAnIso("function is not a bijection".to_string()))?;
        Ok(Iso { forward, backward })
    }

    pub fn forward(&self) -> &FinFn {
        &self.forward
    }

    pub fn backward(&self) -> &FinFn {
        &self.backward
    }
}

/// Enumerates every function `domain -> codomain` in odometer order.
pub struct FunctionSpace {
    domain: FinSet,
    codomain: FinSet,
    current: Option<Vec<usize>>,
}

impl FunctionSpace {
    pub fn new(domain: &FinSet, codomain: &FinSet) -> Self {
        let current = if codomain.is_empty() && !domain.is_empty() {
            None
        } else {
            Some(vec![0; domain.len()])
        };
        FunctionSpace {
            domain: domain.clone(),
            codomain: codomain.clone(),
            current,
        }
    }

    /// `|codomain|^|domain|`, or `None` on overflow.
    pub fn size(domain: &FinSet, codomain: &FinSet) -> Option<u128> {
        let exp = u32::try_from(domain.len()).ok()?;
        (codomain.len() as u128).checked_pow(exp)
    }
}

impl Iterator for FunctionSpace {
    type Item = FinFn;

    fn next(&mut self) -> Option<FinFn> {
        let current = self.current.as_mut()?;
        let out = FinFn::from_indices(self.domain.clone(), self.codomain.clone(), current.clone());
        let n = self.codomain.len();
        let mut carry = true;
        for digit in current.iter_mut() {
            *digit += 1;
            if *digit < n {
                carry = false;
                break;
            }
            *digit = 0;
        }
        if carry {
            self.current = None;
        }
        Some(out)
    }
}
