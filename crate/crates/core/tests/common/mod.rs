#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use mufix::datalog::{parse_program, Program};
use mufix::{FinSet, FunctorExpr};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn atoms(names: &[&str]) -> FinSet {
    FinSet::atoms(names.iter().copied())
}

/// Const K, Id, 1+X, 1+A×X with |A|=2, A×X, 0+K.
pub fn functor_corpus() -> Vec<FunctorExpr> {
    let ab = atoms(&["a", "b"]);
    vec![
        FunctorExpr::constant("K", atoms(&["k1", "k2"])),
        FunctorExpr::Id,
        FunctorExpr::naturals(),
        FunctorExpr::lists("A", ab.clone()),
        FunctorExpr::prod(FunctorExpr::constant("A", ab), FunctorExpr::Id),
        FunctorExpr::sum(FunctorExpr::Zero, FunctorExpr::constant("K", atoms(&["k"]))),
    ]
}

pub const TC_RULES: &str = "path(X,Y) :- edge(X,Y).\npath(X,Z) :- path(X,Y), edge(Y,Z).\n";

/// A random DAG on `n` nodes: edges only go from lower to higher labels.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let density = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn tc_program(edges: &[(usize, usize)]) -> Program {
    let mut text: String = edges
        .iter()
        .map(|(a, b)| format!("edge({a},{b}).\n"))
        .collect();
    text.push_str(TC_RULES);
    parse_program(&text).expect("generated program parses")
}

/// Reachability by depth-first search from every node.
pub fn reachability(edges: &[(usize, usize)]) -> BTreeSet<(String, String)> {
    let nodes: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut out = BTreeSet::new();
    for &s in &nodes {
        let mut stack = vec![s];
        let mut seen = BTreeSet::new();
        while let Some(u) = stack.pop() {
            for &(a, b) in edges {
                if a == u && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        for t in seen {
            out.insert((s.to_string(), t.to_string()));
        }
    }
    out
}

/// A random positive, range-restricted program over at most three predicates
/// and four constants.
pub fn random_program<R: Rng>(rng: &mut R) -> Program {
    let n_preds = rng.gen_range(1..=3);
    let arities: Vec<usize> = (0..n_preds).map(|_| rng.gen_range(0..=2)).collect();
    let n_consts = rng.gen_range(1..=4);
    let consts: Vec<String> = (0..n_consts).map(|i| format!("c{i}")).collect();
    let vars = ["X", "Y", "Z"];
    let render = |p: usize, args: &[String]| {
        if args.is_empty() {
            format!("p{p}")
        } else {
            format!("p{p}({})", args.join(","))
        }
    };
    let mut text = String::new();
    for _ in 0..rng.gen_range(1..=5) {
        let p = rng.gen_range(0..n_preds);
        let args: Vec<String> = (0..arities[p])
            .map(|_| consts.choose(rng).unwrap().clone())
            .collect();
        text.push_str(&render(p, &args));
        text.push_str(".\n");
    }
    for _ in 0..rng.gen_range(0..=4) {
        let body_len = rng.gen_range(1..=3);
        let mut body = Vec::new();
        let mut body_vars = BTreeSet::new();
        for _ in 0..body_len {
            let p = rng.gen_range(0..n_preds);
            let args: Vec<String> = (0..arities[p])
                .map(|_| {
                    if rng.gen_bool(0.75) {
                        let v = vars.choose(rng).unwrap().to_string();
                        body_vars.insert(v.clone());
                        v
                    } else {
                        consts.choose(rng).unwrap().clone()
                    }
                })
                .collect();
            body.push(render(p, &args));
        }
        let head_pool: Vec<String> = body_vars
            .into_iter()
            .chain(consts.iter().cloned())
            .collect();
        let h = rng.gen_range(0..n_preds);
        let head_args: Vec<String> = (0..arities[h])
            .map(|_| head_pool.choose(rng).unwrap().clone())
            .collect();
        text.push_str(&format!(
            "{} :- {}.\n",
            render(h, &head_args),
            body.join(", ")
        ));
    }
    parse_program(&text).unwrap_or_else(|e| panic!("generated program failed: {e}\n{text}"))
}
