//! `ncworlds`: reduce expressions and run exact verification suites.
//!
//! Exit codes: 0 when everything holds, 1 when a check fails or an
//! evaluation error occurs, 2 on usage or parse errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use ncworlds::eval::{build, evaluate};
use ncworlds::parse;
use ncworlds::suites::{b_cross_b_threshold_met, em_trials, run_suite, Options, Suite, EM_IDS};
use ncworlds::SuiteReport;
use ncworlds_core::constraints::{coefficient_series, derivative_tower, differences, CoefficientSeries};
use ncworlds_core::iterant::{
    decompose_terms, eta, imaginary, iterant2, lorentz_boost_velocity, quaternion_table, Matrix,
    UNIT_NAMES,
};
use ncworlds_core::quotient::{RewriteSystem, DEFAULT_MAX_STEPS};
use ncworlds_core::scalar::rational;
use ncworlds_core::skewdiff::EQUATION_NAMES;
use ncworlds_core::{Scalar, Word};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ncworlds", version, about = "Exact non-commutative calculus: reduce expressions and verify identities")]
struct Cli {
    /// Rewrite system applied after constructing an expression.
    #[arg(long, global = true, value_enum, default_value = "free")]
    world: World,
    /// Reduction step limit per rewrite.
    #[arg(long, global = true, env = "NCWORLDS_MAX_STEPS", default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum World {
    Free,
    Flat,
    #[value(name = "flat-fn")]
    FlatFn,
    Abc,
}

impl World {
    fn system(self) -> RewriteSystem {
        match self {
            World::Free => RewriteSystem::free(),
            World::Flat => RewriteSystem::flat(),
            World::FlatFn => RewriteSystem::flat_fn(),
            World::Abc => RewriteSystem::abc_relations(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its normal form.
    Reduce { expr: String },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        range: i64,
    },
    /// Field equations on random integer position series.
    EmSim {
        #[arg(long, default_value_t = 12)]
        length: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        range: i64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the classical derivative tower of θ with θ' = hθ.
    Tower {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=40))]
        levels: u32,
        #[arg(long, value_enum)]
        coeff_series: Option<SeriesArg>,
    },
    /// Iterant demonstrations.
    Iterant {
        #[command(subcommand)]
        action: IterantAction,
    },
    /// Matrix operations.
    Matrix {
        #[command(subcommand)]
        action: MatrixAction,
    },
    /// Constraint identities.
    Constraints {
        #[command(subcommand)]
        action: ConstraintsAction,
    },
}

#[derive(Subcommand)]
enum IterantAction {
    /// Square roots of −1, quaternions and Lorentz boosts.
    Demo,
}

#[derive(Subcommand)]
enum MatrixAction {
    /// Decompose a square matrix, given as a JSON array of rows, into
    /// diagonal-times-permutation terms.
    Decompose { matrix: String },
}

#[derive(Subcommand)]
enum ConstraintsAction {
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        order: Order,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    #[value(name = "1")]
    First,
    #[value(name = "2")]
    Second,
    #[value(name = "3")]
    Third,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    HPrime,
    HPrimeSquared,
}

fn code(c: u8) -> ExitCode {
    ExitCode::from(c)
}

fn emit(report: &SuiteReport, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    code(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_steps = cli.max_steps;
    match cli.command {
        Command::Reduce { expr } => reduce(&expr, cli.world.system().with_max_steps(max_steps)),
        Command::Verify { suite, json, seed, trials, length, range } => {
            let opts = Options { seed, trials, length, range, max_steps };
            emit(&run_suite(suite, &opts), json)
        }
        Command::EmSim { length, seed, range, trials, json } => {
            let opts = Options { seed, trials, length, range, max_steps };
            em_sim(&opts, json)
        }
        Command::Tower { levels, coeff_series } => tower(levels, coeff_series),
        Command::Iterant { action: IterantAction::Demo } => iterant_demo(),
        Command::Matrix { action: MatrixAction::Decompose { matrix } } => matrix_decompose(&matrix),
        Command::Constraints { action: ConstraintsAction::Verify { order, json } } => {
            let opts = Options { max_steps, ..Options::default() };
            let suites: &[Suite] = match order {
                Order::First => &[Suite::Constraints1],
                Order::Second => &[Suite::Constraints2],
                Order::Third => &[Suite::Constraints3],
                Order::All => &[Suite::Constraints1, Suite::Constraints2, Suite::Constraints3],
            };
            let mut checks = Vec::new();
            for s in suites {
                for mut c in run_suite(*s, &opts).checks {
                    if suites.len() > 1 {
                        c.id = format!("{}/{}", s.name(), c.id);
                    }
                    checks.push(c);
                }
            }
            let name = if suites.len() == 1 { suites[0].name() } else { "constraints" };
            emit(&SuiteReport::new(name, checks), json)
        }
    }
}

fn reduce(src: &str, world: RewriteSystem) -> ExitCode {
    let e = match parse(src) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {err}");
            return code(2);
        }
    };
    match evaluate(&e, &world) {
        Ok(p) => {
            println!("{p}");
            code(0)
        }
        Err(err) => {
            eprintln!("error: {err}");
            code(1)
        }
    }
}

fn em_sim(opts: &Options, json: bool) -> ExitCode {
    let trials = em_trials(opts);
    let holds: Vec<bool> = (0..4).map(|k| !trials.is_empty() && trials.iter().all(|t| t.equations[k])).collect();
    let nonzero = trials.iter().filter(|t| t.b_cross_b_nonzero).count();
    let residual_max = trials
        .iter()
        .map(|t| t.residual_max.clone())
        .find(|r| r != "0")
        .unwrap_or_else(|| "0".to_string());
    if json {
        let equations: Vec<Value> = (0..4)
            .map(|k| json!({ "id": EM_IDS[k], "equation": EQUATION_NAMES[k], "holds": holds[k] }))
            .collect();
        let out = json!({
            "seed": opts.seed,
            "trials": opts.trials,
            "length": opts.length,
            "range": opts.range,
            "residual_max": residual_max,
            "equations": equations,
            "bxb_nonzero_trials": nonzero,
            "per_trial": trials,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        for t in &trials {
            let marks = t.equations.iter().map(|&h| if h { '✓' } else { '✗' }).join(" ");
            println!(
                "trial {:>3}: {marks}  residual_max {}  B×B {}",
                t.trial,
                t.residual_max,
                if t.b_cross_b_nonzero { "≠ 0" } else { "= 0" }
            );
        }
        for k in 0..4 {
            println!("{} {}", if holds[k] { '✓' } else { '✗' }, EQUATION_NAMES[k]);
        }
        println!("B×B nonzero in {nonzero} of {} trials; residual_max {residual_max}", trials.len());
    }
    let ok = holds.iter().all(|&h| h) && b_cross_b_threshold_met(nonzero, trials.len());
    code(if ok { 0 } else { 1 })
}

fn tower(levels: u32, series: Option<SeriesArg>) -> ExitCode {
    let t = derivative_tower(levels);
    match series {
        None => {
            for l in &t {
                println!("θ^({}) = {}", l.level, l.polynomial);
            }
        }
        Some(s) => {
            let (kind, label) = match s {
                SeriesArg::HPrime => (CoefficientSeries::HPrime, "h^(n-2) θ h'"),
                SeriesArg::HPrimeSquared => (CoefficientSeries::HPrimeSquared, "h^(n-4) θ h'^2"),
            };
            let values = coefficient_series(&t, kind);
            println!("coefficient of {label}:");
            for (n, c) in &values {
                println!("  level {n}: {c}");
            }
            let vals: Vec<_> = values.into_iter().map(|(_, c)| c).collect();
            for order in 1..=4 {
                let d = differences(&vals, order);
                if d.is_empty() {
                    break;
                }
                println!("  differences of order {order}: {}", d.iter().join(", "));
            }
        }
    }
    code(0)
}

fn iterant_demo() -> ExitCode {
    let mut ok = true;
    let minus_one = ncworlds_core::iterant::IterantElement::scalar(2, Scalar::from_int(-1));
    let clock = iterant2(Scalar::one(), Scalar::from_int(-1)).checked_mul(&eta()).expect("order 2");
    let i = imaginary();
    let sq = clock.checked_mul(&clock).expect("order 2");
    ok &= sq == minus_one && i.checked_mul(&i).expect("order 2") == minus_one;
    println!("square roots of -1");
    println!("  [1,-1]η = {clock}, squared = {sq}, matrix {}", clock.to_matrix());
    println!("  εη = [-1,1]η = {i}, matrix {}", i.to_matrix());

    let t = quaternion_table();
    ok &= t.all_zero() && t.ijk == minus_one;
    println!("quaternions: i = εη, j = √-1·ε̄, k = √-1·η");
    for (r, name) in UNIT_NAMES.iter().enumerate() {
        let row = (0..4)
            .map(|c| match t.identified[r][c] {
                Some((s, u)) => format!("{:>3}", format!("{}{}", if s < 0 { "-" } else { "" }, UNIT_NAMES[u])),
                None => t.products[r][c].to_string(),
            })
            .join(" ");
        println!("  {name} | {row}");
    }
    println!("  ijk = {}; matrix products agree: {}", t.ijk, t.matrix_agrees);

    let v = rational(3, 5);
    match lorentz_boost_velocity(&v, &Scalar::one(), &Scalar::zero()) {
        Ok((t2, x2)) => {
            ok &= t2 == Scalar::ratio(5, 4) && x2 == Scalar::ratio(-3, 4);
            println!("lorentz boost [k,1/k] with v = 3/5 (k = 2): (t, x) = (1, 0) -> ({t2}, {x2})");
        }
        Err(e) => {
            ok = false;
            println!("lorentz boost failed: {e}");
        }
    }
    println!("{}", if ok { "all hold" } else { "FAILED" });
    code(if ok { 0 } else { 1 })
}

/// A matrix entry: an integer, or an expression string that evaluates to a scalar.
fn entry(v: &Value) -> Result<Scalar, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::from_int)
            .ok_or_else(|| format!("{n} is not an integer; give fractions as strings like \"1/2\"")),
        Value::String(s) => {
            let e = parse(s).map_err(|err| format!("{s:?}: {err}"))?;
            let p = build(&e).map_err(|err| format!("{s:?}: {err}"))?;
            if p.terms().any(|(w, _)| !w.is_empty()) {
                return Err(format!("{s:?} is not a scalar"));
            }
            Ok(p.coeff(&Word::empty()))
        }
        other => Err(format!("unsupported entry {other}")),
    }
}

fn matrix_decompose(src: &str) -> ExitCode {
    let parsed: Result<Matrix, String> = (|| {
        let v: Value = serde_json::from_str(src).map_err(|e| format!("invalid JSON: {e}"))?;
        let rows = v.as_array().ok_or("expected an array of rows")?;
        let rows = rows
            .iter()
            .map(|r| r.as_array().ok_or("each row must be an array".to_string())?.iter().map(entry).collect())
            .collect::<Result<Vec<Vec<Scalar>>, String>>()?;
        Matrix::from_rows(rows).map_err(|e| e.to_string())
    })();
    let m = match parsed {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return code(2);
        }
    };
    let dec = match decompose_terms(&m) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return code(1);
        }
    };
    let reconstructs = dec.to_iterant().to_matrix() == m;
    let terms: Vec<Value> = dec
        .terms
        .iter()
        .map(|(d, p)| {
            json!({
                "diagonal": d.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "permutation": p.one_line(),
            })
        })
        .collect();
    let out = json!({ "factor": dec.factor.to_string(), "terms": terms, "reconstructs": reconstructs });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    code(if reconstructs { 0 } else { 1 })
}
