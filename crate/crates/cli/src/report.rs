//! Report documents. Each one renders as text or as JSON with the same fields.

use std::fmt::{self, Write as _};

use mufix::FinFn;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Mapping {
    pub from: String,
    pub to: String,
}

pub fn mapping(f: &FinFn) -> Vec<Mapping> {
    f.pairs()
        .map(|(x, y)| Mapping {
            from: x.to_string(),
            to: y.to_string(),
        })
        .collect()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_map(out: &mut String, title: &str, rows: &[Mapping]) {
    let _ = writeln!(out, "{title}:");
    for m in rows {
        let _ = writeln!(out, "  {} -> {}", m.from, m.to);
    }
}

#[derive(Debug, Serialize)]
pub struct StageRow {
    pub stage: usize,
    pub size: usize,
}

#[derive(Debug, Serialize)]
pub struct ChainReport {
    pub functor: String,
    pub max_stage: usize,
    pub stages: Vec<StageRow>,
    pub converged_at: Option<usize>,
    pub carrier: Option<Vec<String>>,
    pub structure: Option<Vec<Mapping>>,
}

#[derive(Debug, Serialize)]
pub struct FoldReport {
    pub functor: String,
    pub converged_at: usize,
    pub target_carrier: Vec<String>,
    pub fold: Vec<Mapping>,
    pub square_commutes: bool,
}

#[derive(Debug, Serialize)]
pub struct LambekReport {
    pub functor: String,
    pub converged_at: usize,
    pub iota: Vec<Mapping>,
    pub h: Vec<Mapping>,
    pub h_is_homomorphism: bool,
    pub iota_after_h_is_id: bool,
    pub h_after_iota_is_id: bool,
}

#[derive(Debug, Serialize)]
pub struct LeastCheck {
    pub herbrand_base: usize,
    pub fixed_points: usize,
    pub least: bool,
}

#[derive(Debug, Serialize)]
pub struct DatalogReport {
    pub engine: &'static str,
    pub iterations: usize,
    pub model: Vec<String>,
    pub trace: Option<Vec<Vec<String>>>,
    pub semi_naive_agrees: Option<bool>,
    pub least_check: Option<LeastCheck>,
}

#[derive(Debug, Serialize)]
pub struct RecursionCheck {
    pub max_n: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct TermsReport {
    pub functor: String,
    pub depth: usize,
    pub count: usize,
    pub terms: Vec<String>,
    pub cata: Option<Vec<Mapping>>,
    pub recursion: Option<RecursionCheck>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Chain(ChainReport),
    Fold(FoldReport),
    Lambek(LambekReport),
    Datalog(DatalogReport),
    Terms(TermsReport),
}

impl Report {
    /// True when every property check carried by the report passed.
    pub fn checks_pass(&self) -> bool {
        match self {
            Report::Chain(_) => true,
            Report::Fold(r) => r.square_commutes,
            Report::Lambek(r) => {
                r.h_is_homomorphism && r.iota_after_h_is_id && r.h_after_iota_is_id
            }
            Report::Datalog(r) => {
                r.semi_naive_agrees != Some(false) && r.least_check.as_ref().is_none_or(|c| c.least)
            }
            Report::Terms(r) => r.recursion.as_ref().is_none_or(|c| c.violations.is_empty()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            Report::Chain(r) => {
                let _ = writeln!(out, "functor: {}", r.functor);
                let _ = writeln!(out, "stage  size");
                for row in &r.stages {
                    let _ = writeln!(out, "{:<6} {}", row.stage, row.size);
                }
                match r.converged_at {
                    Some(n) => {
                        let _ = writeln!(out, "converged at stage {n}");
                        let carrier = r.carrier.as_deref().unwrap_or_default();
                        let _ = writeln!(out, "carrier: {{{}}}", carrier.join(", "));
                        write_map(
                            &mut out,
                            "structure",
                            r.structure.as_deref().unwrap_or_default(),
                        );
                    }
                    None => {
                        let _ =
                            writeln!(out, "no convergence within budget ({} stages)", r.max_stage);
                    }
                }
            }
            Report::Fold(r) => {
                let _ = writeln!(out, "functor: {}", r.functor);
                let _ = writeln!(out, "converged at stage {}", r.converged_at);
                let _ = writeln!(out, "target carrier: {{{}}}", r.target_carrier.join(", "));
                write_map(&mut out, "fold", &r.fold);
                let _ = writeln!(out, "homomorphism square: {}", verdict(r.square_commutes));
            }
            Report::Lambek(r) => {
                let _ = writeln!(out, "functor: {}", r.functor);
                let _ = writeln!(out, "converged at stage {}", r.converged_at);
                write_map(&mut out, "iota", &r.iota);
                write_map(&mut out, "h", &r.h);
                let _ = writeln!(out, "h is a homomorphism: {}", verdict(r.h_is_homomorphism));
                let _ = writeln!(out, "ι∘h = id: {}", verdict(r.iota_after_h_is_id));
                let _ = writeln!(out, "h∘ι = id: {}", verdict(r.h_after_iota_is_id));
            }
            Report::Datalog(r) => {
                if let Some(trace) = &r.trace {
                    for (i, delta) in trace.iter().enumerate() {
                        let _ = writeln!(out, "iteration {}: +{{{}}}", i + 1, delta.join(", "));
                    }
                }
                let _ = writeln!(out, "engine: {}", r.engine);
                let _ = writeln!(out, "iterations: {}", r.iterations);
                let _ = writeln!(out, "least model ({} atoms):", r.model.len());
                for atom in &r.model {
                    let _ = writeln!(out, "{atom}");
                }
                if let Some(ok) = r.semi_naive_agrees {
                    let _ = writeln!(out, "semi-naive agrees with naive: {}", verdict(ok));
                }
                if let Some(c) = &r.least_check {
                    let _ = writeln!(
                        out,
                        "least among {} fixed points (base {}): {}",
                        c.fixed_points,
                        c.herbrand_base,
                        verdict(c.least)
                    );
                }
            }
            Report::Terms(r) => {
                let _ = writeln!(out, "functor: {}", r.functor);
                let _ = writeln!(out, "depth: {}", r.depth);
                let _ = writeln!(out, "count: {}", r.count);
                if !r.terms.is_empty() {
                    let _ = writeln!(out, "{}", r.terms.join(" "));
                }
                if let Some(rows) = &r.cata {
                    write_map(&mut out, "cata", rows);
                }
                if let Some(c) = &r.recursion {
                    let _ = writeln!(
                        out,
                        "recursion equations (n <= {}): {}",
                        c.max_n,
                        verdict(c.violations.is_empty())
                    );
                    for v in &c.violations {
                        let _ = writeln!(out, "  {v}");
                    }
                }
            }
        }
        f.write_str(&out)
    }
}
