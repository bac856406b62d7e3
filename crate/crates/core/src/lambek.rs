//! Lambek's lemma, checked on a concrete initial algebra.
//!
//! `h` is the fold of `(μφ, ι)` into `(φ(μφ), φ(ι))`; both `ι ∘ h` and
//! `h ∘ ι` must be identities.

use std::fmt;

use crate::chain::InitialAlgebra;
use crate::error::Result;
use crate::finset::{compose, FinFn};
use crate::functor::{is_homomorphism, Algebra};

#[derive(Clone, Debug)]
pub struct LambekReport {
    /// The fold `h: μφ -> φ(μφ)`.
    pub h: FinFn,
    pub iota: FinFn,
    pub h_is_homomorphism: bool,
    /// `ι ∘ h = id_{μφ}`.
    pub iota_after_h: bool,
    /// `h ∘ ι = id_{φ(μφ)}`.
    pub h_after_iota: bool,
}

impl LambekReport {
    pub fn passed(&self) -> bool {
        self.h_is_homomorphism && self.iota_after_h && self.h_after_iota
    }
}

pub fn lambek_verify(initial: &InitialAlgebra) -> Result<LambekReport> {
    let alg = initial.algebra();
    let functor = alg.functor();
    let iota = alg.structure().clone();
    let lifted = functor.apply_mor(&iota);
    let target = Algebra::new(functor.clone(), iota.domain().clone(), lifted)?;
    let h = initial.fold(&target)?;
    let h_is_homomorphism = is_homomorphism(&h, alg, &target)?;
    let iota_after_h = compose(&iota, &h)?.is_identity();
    let h_after_iota = compose(&h, &iota)?.is_identity();
    Ok(LambekReport {
        h,
        iota,
        h_is_homomorphism,
        iota_after_h,
        h_after_iota,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for LambekReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "iota:")?;
        write!(f, "{}", self.iota)?;
        writeln!(f, "h:")?;
        write!(f, "{}", self.h)?;
        writeln!(
            f,
            "h is a homomorphism: {}",
            verdict(self.h_is_homomorphism)
        )?;
        writeln!(f, "iota . h = id: {}", verdict(self.iota_after_h))?;
        writeln!(f, "h . iota = id: {}", verdict(self.h_after_iota))
    }
}
