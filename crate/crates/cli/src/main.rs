mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mufix::chain::{initial_algebra, run_chain, ChainConfig};
use mufix::datalog::{least_model, parse_program, semi_naive, tp_operator};
use mufix::functor::is_homomorphism;
use mufix::lambek::lambek_verify;
use mufix::lattice::{check_least, EXHAUSTIVE_CAP};
use mufix::syntax::{parse_algebra, parse_functor, FunctorDef};
use mufix::terms::{cata, check_recursion_equations, enumerate_terms, pretty};
use mufix::{Error, ErrorClass};

use report::{
    mapping, ChainReport, DatalogReport, FoldReport, LambekReport, LeastCheck, Mapping,
    RecursionCheck, Report, StageRow, TermsReport,
};

const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_CHECK: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mufix",
    version,
    about = "Initial algebras and least fixed points on finite sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Highest chain stage to build.
    #[arg(long, global = true, default_value_t = 64)]
    max_stage: usize,
    /// Term depth for `terms`.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,
    /// Largest set the tool will materialize.
    #[arg(long, global = true, default_value_t = 100_000)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the initial chain of a functor and report convergence.
    Chain { functor: PathBuf },
    /// Fold the initial algebra into a target algebra.
    Fold { functor: PathBuf, algebra: PathBuf },
    /// Check that the initial structure map is an isomorphism.
    Lambek { functor: PathBuf },
    /// Compute the least model of a Datalog program.
    Datalog {
        program: PathBuf,
        /// Print the atoms added at each iteration.
        #[arg(long)]
        trace: bool,
        /// Use semi-naive evaluation and compare with the naive result.
        #[arg(long)]
        semi_naive: bool,
        /// Compare against every fixed point (small Herbrand bases only).
        #[arg(long)]
        check_least: bool,
    },
    /// Enumerate terms up to `--depth`, optionally folding them into an algebra.
    Terms {
        functor: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Core(Error),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.class() == ErrorClass::Budget => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Config(m) => f.write_str(m),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_functor(path: &Path) -> Result<FunctorDef, Failure> {
    Ok(parse_functor(&read(path)?)?)
}

fn run(cli: &Cli) -> Result<(Report, bool), Failure> {
    if cli.max_stage == 0 || cli.cap == 0 {
        return Err(Failure::Config(
            "--max-stage and --cap must be positive".into(),
        ));
    }
    let cfg = ChainConfig {
        max_stage: cli.max_stage,
        cap: cli.cap,
    };
    let report = match &cli.command {
        Command::Chain { functor } => {
            let def = load_functor(functor)?;
            let r = run_chain(&def.expr, cfg)?;
            let converged = r.initial.is_some();
            let report = Report::Chain(ChainReport {
                functor: def.expr.to_string(),
                max_stage: cli.max_stage,
                stages: r
                    .chain
                    .stage_sizes()
                    .into_iter()
                    .enumerate()
                    .map(|(stage, size)| StageRow { stage, size })
                    .collect(),
                converged_at: r.converged_at,
                carrier: r.initial.as_ref().map(|i| {
                    i.algebra()
                        .carrier()
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                }),
                structure: r.initial.as_ref().map(|i| mapping(i.algebra().structure())),
            });
            return Ok((report, converged));
        }
        Command::Fold { functor, algebra } => {
            let def = load_functor(functor)?;
            let target = parse_algebra(&read(algebra)?, &def)?;
            let init = initial_algebra(&def.expr, cfg)?;
            let fold = init.fold(&target)?;
            Report::Fold(FoldReport {
                functor: def.expr.to_string(),
                converged_at: init.stage(),
                target_carrier: target.carrier().iter().map(ToString::to_string).collect(),
                square_commutes: is_homomorphism(&fold, init.algebra(), &target)?,
                fold: mapping(&fold),
            })
        }
        Command::Lambek { functor } => {
            let def = load_functor(functor)?;
            let init = initial_algebra(&def.expr, cfg)?;
            let r = lambek_verify(&init)?;
            Report::Lambek(LambekReport {
                functor: def.expr.to_string(),
                converged_at: init.stage(),
                iota: mapping(&r.iota),
                h: mapping(&r.h),
                h_is_homomorphism: r.h_is_homomorphism,
                iota_after_h_is_id: r.iota_after_h,
                h_after_iota_is_id: r.h_after_iota,
            })
        }
        Command::Datalog {
            program,
            trace,
            semi_naive: use_semi,
            check_least: least,
        } => {
            let p = parse_program(&read(program)?)?;
            let naive = least_model(&p, cli.cap)?;
            let mut agrees = None;
            if *use_semi {
                agrees = Some(semi_naive(&p, cli.cap)? == naive.model);
            }
            let least_check = if *least {
                let op = tp_operator(&p, cli.cap)?;
                let r = check_least(&op, &naive.model, EXHAUSTIVE_CAP)?;
                Some(LeastCheck {
                    herbrand_base: op.lattice().universe().len(),
                    fixed_points: r.fixed_points.len(),
                    least: r.is_least(),
                })
            } else {
                None
            };
            let strings = |atoms: &[mufix::datalog::GroundAtom]| {
                atoms.iter().map(ToString::to_string).collect::<Vec<_>>()
            };
            Report::Datalog(DatalogReport {
                engine: if *use_semi { "semi-naive" } else { "naive" },
                iterations: naive.iterations,
                model: naive.model.iter().map(ToString::to_string).collect(),
                trace: trace.then(|| naive.deltas().iter().map(|d| strings(d)).collect()),
                semi_naive_agrees: agrees,
                least_check,
            })
        }
        Command::Terms { functor, algebra } => {
            let def = load_functor(functor)?;
            let f = &def.expr;
            let universe = enumerate_terms(f, cli.depth, cli.cap)?;
            let terms = universe.terms();
            let mut cata_rows = None;
            let mut recursion = None;
            if let Some(path) = algebra {
                let target = parse_algebra(&read(path)?, &def)?;
                let mut rows = Vec::new();
                for t in terms.iter() {
                    rows.push(Mapping {
                        from: pretty(f, t),
                        to: cata(f, &target, t)?.to_string(),
                    });
                }
                cata_rows = Some(rows);
                if f.is_naturals_shape() {
                    let max_n = cli.depth;
                    let violations = check_recursion_equations(&target, max_n)?
                        .into_iter()
                        .map(|v| format!("n = {}: expected {}, found {}", v.n, v.expected, v.found))
                        .collect();
                    recursion = Some(RecursionCheck { max_n, violations });
                }
            }
            Report::Terms(TermsReport {
                functor: f.to_string(),
                depth: cli.depth,
                count: terms.len(),
                terms: terms.iter().map(|t| pretty(f, t)).collect(),
                cata: cata_rows,
                recursion,
            })
        }
    };
    Ok((report, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok((report, within_budget)) => {
            match cli.format {
                Format::Text => print!("{report}"),
                Format::Json => print!("{}", report.to_json()),
            }
            if !within_budget {
                ExitCode::from(EXIT_BUDGET)
            } else if !report.checks_pass() {
                ExitCode::from(EXIT_CHECK)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
