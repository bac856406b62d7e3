//! Workload builders shared by the benches.

use std::fmt::Write as _;

use mufix::datalog::{parse_program, Program};
use mufix::{FinSet, FunctorExpr};

/// Transitive closure over a path graph `0 -> 1 -> ... -> n-1`.
pub fn path_closure(n: usize) -> Program {
    let mut text = String::from("path(X,Y) :- edge(X,Y).\npath(X,Z) :- path(X,Y), edge(Y,Z).\n");
    for i in 1..n {
        let _ = writeln!(text, "edge(n{}, n{i}).", i - 1);
    }
    parse_program(&text).expect("generated program parses")
}

/// `1 + A * X` over an alphabet of `k` letters.
pub fn lists(k: usize) -> FunctorExpr {
    FunctorExpr::lists("A", FinSet::atoms((0..k).map(|i| format!("a{i}"))))
}
