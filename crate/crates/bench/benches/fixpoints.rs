use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mufix::chain::{build_chain, initial_algebra, ChainConfig, DEFAULT_CAP};
use mufix::datalog::{least_model, semi_naive};
use mufix::functor::Algebra;
use mufix::lambek::lambek_verify;
use mufix::terms::enumerate_terms;
use mufix::{FinSet, FunctorExpr};
use mufix_bench::{lists, path_closure};

fn chains(c: &mut Criterion) {
    let mut g = c.benchmark_group("chain");
    for stages in [6, 9, 12] {
        let cfg = ChainConfig {
            max_stage: stages,
            cap: DEFAULT_CAP,
        };
        g.bench_with_input(BenchmarkId::new("lists2", stages), &cfg, |b, cfg| {
            b.iter(|| build_chain(&lists(2), *cfg).unwrap())
        });
    }
    g.bench_function("terms_lists2_depth9", |b| {
        b.iter(|| enumerate_terms(&lists(2), 9, DEFAULT_CAP).unwrap())
    });
    g.finish();
}

fn initial(c: &mut Criterion) {
    let k = FunctorExpr::constant("K", FinSet::atoms(["k1", "k2", "k3"]));
    let init = initial_algebra(&k, ChainConfig::default()).unwrap();
    let y = FinSet::atoms(["u", "v", "w"]);
    let targets: Vec<Algebra> = Algebra::all_on(&k, &y).collect();
    c.bench_function("fold_constant_all_targets", |b| {
        b.iter(|| {
            for t in &targets {
                init.fold(t).unwrap();
            }
        })
    });
    c.bench_function("lambek_constant", |b| {
        b.iter(|| lambek_verify(&init).unwrap())
    });
}

fn datalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure");
    g.sample_size(20);
    for n in [8, 16, 24] {
        let p = path_closure(n);
        g.bench_with_input(BenchmarkId::new("naive", n), &p, |b, p| {
            b.iter(|| least_model(p, DEFAULT_CAP).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("semi_naive", n), &p, |b, p| {
            b.iter(|| semi_naive(p, DEFAULT_CAP).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, chains, initial, datalog);
criterion_main!(benches);
