//! Positive Datalog: programs, the immediate-consequence operator `T_P`, and
//! least models by naive and semi-naive iteration.

mod ast;
mod eval;
mod parse;

pub use ast::{Atom, GroundAtom, Interpretation, Program, Rule, Term};
pub use eval::{
    groundings, herbrand_base, is_model, least_model, semi_naive, tp_operator, tp_step,
    tp_step_by_substitution, LeastModel,
};
pub use parse::parse_program;
