mod common;

use common::{data_dir, random_dag, random_program, reachability, tc_program};
use mufix::datalog::{
    herbrand_base, is_model, least_model, parse_program, semi_naive, tp_operator, tp_step,
    tp_step_by_substitution, Interpretation, Program,
};
use mufix::lattice::{check_fixed, check_least, check_monotone, EXHAUSTIVE_CAP};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(String, Program)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "dl") {
            let text = std::fs::read_to_string(&path).unwrap();
            if let Ok(p) = parse_program(&text) {
                out.push((path.display().to_string(), p));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    assert!(out.len() >= 4);
    out
}

fn small_programs() -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out: Vec<Program> = corpus().into_iter().map(|(_, p)| p).collect();
    while out.len() < 60 {
        let p = random_program(&mut rng);
        if p.herbrand_size().is_some_and(|s| s <= 12) {
            out.push(p);
        }
    }
    out
}

#[test]
fn transitive_closure_matches_reachability() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let n = 2 + (rand::Rng::gen_range(&mut rng, 0..5));
        let edges = random_dag(&mut rng, n);
        let p = tc_program(&edges);
        let lm = least_model(&p, 100_000).unwrap();
        let paths: std::collections::BTreeSet<(String, String)> = lm
            .model
            .iter()
            .filter(|a| a.predicate == "path")
            .map(|a| (a.args[0].clone(), a.args[1].clone()))
            .collect();
        assert_eq!(paths, reachability(&edges));
        assert_eq!(semi_naive(&p, 100_000).unwrap(), lm.model);
    }
}

#[test]
fn least_models_are_fixed_models() {
    for p in small_programs() {
        let op = tp_operator(&p, 100_000).unwrap();
        let lm = least_model(&p, 100_000).unwrap();
        assert!(check_fixed(&op, &lm.model));
        assert!(is_model(&p, &lm.model));
        assert_eq!(semi_naive(&p, 100_000).unwrap(), lm.model, "{p}");
    }
}

#[test]
fn traces_ascend_and_respect_the_iteration_bound() {
    for p in small_programs() {
        let lm = least_model(&p, 100_000).unwrap();
        let base = herbrand_base(&p, 100_000).unwrap();
        assert!(lm.iterations <= base.len());
        for w in lm.run.trace.windows(2).take(lm.iterations) {
            assert!(w[0].is_subset(&w[1]) && w[0].len() < w[1].len());
        }
        assert_eq!(lm.run.union(), lm.model);
    }
}

#[test]
fn tp_is_monotone_on_small_bases() {
    for p in small_programs() {
        let op = tp_operator(&p, 100_000).unwrap();
        if op.lattice().universe().len() > 8 {
            continue;
        }
        let report = check_monotone(&op, EXHAUSTIVE_CAP, 0);
        assert!(report.exhaustive);
        assert!(report.is_monotone(), "{p}");
    }
}

#[test]
fn least_model_is_minimum_among_fixed_points() {
    for p in small_programs() {
        let op = tp_operator(&p, 100_000).unwrap();
        if op.lattice().universe().len() > EXHAUSTIVE_CAP {
            continue;
        }
        let lm = least_model(&p, 100_000).unwrap();
        let report = check_least(&op, &lm.model, EXHAUSTIVE_CAP).unwrap();
        assert!(report.is_least(), "{p}");
        assert_eq!(
            report.fixed_points.iter().min_by_key(|s| s.len()),
            Some(&lm.model)
        );
    }
}

#[test]
fn join_grounding_matches_substitution_grounding() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let p = random_program(&mut rng);
        let mut i = Interpretation::new();
        for _ in 0..4 {
            let fast = tp_step(&p, &i);
            assert_eq!(fast, tp_step_by_substitution(&p, &i), "{p}");
            i = fast;
        }
    }
}

#[test]
fn naive_and_semi_naive_agree_on_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let p = random_program(&mut rng);
        assert_eq!(
            semi_naive(&p, 100_000).unwrap(),
            least_model(&p, 100_000).unwrap().model,
            "{p}"
        );
    }
}

#[test]
fn same_generation_program() {
    let text = std::fs::read_to_string(data_dir().join("same_gen.dl")).unwrap();
    let p = parse_program(&text).unwrap();
    let lm = least_model(&p, 100_000).unwrap();
    let sg: Vec<String> = lm
        .model
        .iter()
        .filter(|a| a.predicate == "sg")
        .map(ToString::to_string)
        .collect();
    assert_eq!(
        sg,
        ["sg(a,a)", "sg(b,b)", "sg(b,c)", "sg(c,b)", "sg(c,c)", "sg(d,d)"]
    );
}
