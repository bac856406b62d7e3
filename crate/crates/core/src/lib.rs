//! Executable fixed-point constructions over finite sets.
//!
//! * [`finset`]: finite sets of canonical [`Elem`] terms and total functions.
//! * [`functor`]: polynomial endofunctors `0 | 1 | K | X | F + G | F * G`
//!   acting on sets and functions, and their algebras.
//! * [`chain`]: the initial chain `0 -> φ(0) -> φ²(0) -> ...`, convergence,
//!   the initial algebra it yields, and folds out of it.
//! * [`lambek`]: the structure map of the initial algebra is invertible.
//! * [`terms`]: well-founded terms for functors whose chain keeps growing,
//!   with catamorphisms by structural recursion.
//! * [`lattice`]: Kleene iteration on finite powerset lattices.
//! * [`datalog`]: positive Datalog and its least model as the least fixed
//!   point of `T_P`.
//!
//! ```
//! use mufix::chain::{initial_algebra, ChainConfig};
//! use mufix::lambek::lambek_verify;
//! use mufix::syntax::parse_functor;
//!
//! let def = parse_functor("K = {k}\nF = 0 + K").unwrap();
//! let init = initial_algebra(&def.expr, ChainConfig::default()).unwrap();
//! assert_eq!(init.stage(), 1);
//! assert!(lambek_verify(&init).unwrap().passed());
//! ```

pub mod chain;
pub mod datalog;
pub mod elem;
pub mod error;
pub mod finset;
pub mod functor;
pub mod lambek;
pub mod lattice;
pub mod syntax;
pub mod terms;

pub use chain::{Chain, ChainConfig, ChainResult, InitialAlgebra};
pub use elem::Elem;
pub use error::{Error, ErrorClass, Result};
pub use finset::{compose, identity_fn, FinFn, FinSet, Iso};
pub use functor::{Algebra, FunctorExpr};
