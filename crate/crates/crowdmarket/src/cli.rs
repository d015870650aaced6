//! Command-line front end.
//!
//! Exit codes: 0 success, 2 unreadable/malformed input or bad arguments,
//! 3 well-formed input that violates the market model, 4 solver failure.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use crowdmarket_core::equilibrium::br_dynamics_iterates;
use crowdmarket_core::{
    check_assumption1, check_assumption2, check_positive_definite, cross_validate, csp_revenue,
    discriminatory_reward, generate_random_instance, incomplete_info_bound, mu_utility,
    solve_br_dynamics, solve_closed_form, total_mu_utility, uniform_bound_solution,
    uniform_reward, EquilibriumResult, ExpectationProfile, MarketInstance, MarketParams,
    MuProfile, Regime, RewardSolution, SocialGraph, SolutionWarning, SolverConfig,
};
use serde_json::json;

use crate::experiments::{
    self, case_rows_to_csv, case_study_chain, records_to_csv, sweep_population,
    sweep_tie_strength, SweepResult,
};
use crate::format::{
    instance_to_doc, parse_instance, parse_rewards, scenario_config_from_sets, LoadError,
    LoadedInstance,
};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 2;
const EXIT_MODEL: i32 = 3;
const EXIT_SOLVER: i32 = 4;

#[derive(Parser)]
#[command(
    name = "crowdmarket",
    version,
    about = "Participation equilibria and reward design in social crowdsensing markets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance and report its structural checks
    Check(CheckArgs),
    /// Equilibrium participation under a given reward schedule
    Solve(SolveArgs),
    /// Optimal rewards under a chosen regime
    Optimize(OptimizeArgs),
    /// Revenue and utility across population sizes (CSV)
    SweepN(SweepArgs),
    /// Revenue and utility across tie strengths (CSV)
    SweepSocial(SweepArgs),
    /// Per-node schedules on the line market (CSV)
    CaseStudy(CaseStudyArgs),
    /// Draw a random instance and print it as JSON
    ScenarioDump(ScenarioDumpArgs),
    /// Recompute the built-in closed-form reference examples
    Oracle,
}

#[derive(Args)]
struct InputArgs {
    /// Market instance (JSON)
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Override a field before validation, e.g. --set params.c=2
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Args)]
struct SolverArgs {
    /// Stopping tolerance for best-response dynamics
    #[arg(long, default_value_t = 1e-9)]
    epsilon: f64,
    /// Iteration cap for best-response dynamics
    #[arg(long = "max-iter", default_value_t = 100_000)]
    max_iterations: usize,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            epsilon: self.epsilon,
            max_iterations: self.max_iterations,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Best-response dynamics
    Br,
    /// Direct linear solve
    Closed,
    /// Both, reporting their gap
    Both,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Reward file (JSON array, or object with a "reward" array)
    #[arg(long, value_name = "FILE", conflicts_with = "rate", required_unless_present = "rate")]
    reward: Option<PathBuf>,
    /// Uniform reward rate applied to everyone
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write the result as JSON
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Discriminatory,
    Uniform,
    UniformBound,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    regime: RegimeArg,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write the result as JSON
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep values, comma separated (defaults to the reference grid)
    #[arg(long, value_name = "LIST")]
    values: Option<String>,
    #[arg(long, default_value_t = experiments::DEFAULT_REPLICATES)]
    replicates: u32,
    /// Base seed; replicate j draws with seed base+j
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override a scenario field, e.g. --set var_g=0.5
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CaseStudyArgs {
    #[arg(long, default_value_t = 51)]
    n: usize,
    /// Shared benefit coefficient
    #[arg(long, default_value_t = 15.0)]
    a: f64,
    /// Shared cost coefficient
    #[arg(long, default_value_t = 0.1)]
    b: f64,
    #[arg(long, default_value_t = 16.0)]
    c: f64,
    #[arg(long, default_value_t = 0.01)]
    mu: f64,
    #[arg(long, default_value_t = 50.0)]
    s: f64,
    #[arg(long, default_value_t = 0.05)]
    t: f64,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScenarioDumpArgs {
    /// Shorthand for --set seed=...
    #[arg(long)]
    seed: Option<u64>,
    /// Shorthand for --set n=...
    #[arg(long)]
    n: Option<usize>,
    /// Override a scenario field, e.g. --set mean_g=0.2
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

fn input_error(e: &LoadError) -> i32 {
    eprintln!("error: {e}");
    match e {
        LoadError::Io(_) | LoadError::Parse(_) | LoadError::Override(_) => EXIT_INPUT,
        LoadError::Model(_) => EXIT_MODEL,
    }
}

fn solver_error(e: impl Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_SOLVER
}

fn read_file(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(LoadError::Io)
}

fn load_instance(args: &InputArgs) -> Result<LoadedInstance, LoadError> {
    parse_instance(&read_file(&args.input)?, &args.sets)
}

fn write_output(path: &Path, content: &str) -> i32 {
    match std::fs::write(path, content) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_INPUT
        }
    }
}

fn emit(output: Option<&PathBuf>, content: &str, what: &str) -> i32 {
    match output {
        Some(path) => {
            let code = write_output(path, content);
            if code == EXIT_OK {
                eprintln!("{what} written to {}", path.display());
            }
            code
        }
        None => {
            print!("{content}");
            EXIT_OK
        }
    }
}

/// Honor CROWDMARKET_THREADS before rayon spins up its default pool.
fn configure_threads() {
    if let Ok(raw) = std::env::var("CROWDMARKET_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => eprintln!("warning: ignoring CROWDMARKET_THREADS={raw:?} (want a positive integer)"),
        }
    }
}

pub fn run() -> i32 {
    configure_threads();
    match Cli::parse().command {
        Command::Check(args) => cmd_check(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::SweepN(args) => cmd_sweep_n(args),
        Command::SweepSocial(args) => cmd_sweep_social(args),
        Command::CaseStudy(args) => cmd_case_study(args),
        Command::ScenarioDump(args) => cmd_scenario_dump(args),
        Command::Oracle => cmd_oracle(),
    }
}

fn cmd_check(args: CheckArgs) -> i32 {
    let loaded = match load_instance(&args.input) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let inst = &loaded.instance;
    println!("n = {}", inst.n());
    let a1 = check_assumption1(inst);
    if a1.holds {
        println!("Assumption 1: PASS (min margin {:.6})", a1.min_margin());
    } else {
        println!("Assumption 1: FAIL (max ratio {:.6})", a1.max_ratio);
    }
    let a2 = check_assumption2(inst);
    if a2.holds {
        println!("Assumption 2: PASS (margin {:.6})", a2.margin);
    } else {
        println!("Assumption 2: FAIL (margin {:.6})", a2.margin);
    }
    let pd = check_positive_definite(inst);
    if pd.positive_definite {
        println!(
            "Positive definite: PASS (min eigenvalue {:.6})",
            pd.min_eigenvalue
        );
    } else {
        println!(
            "Positive definite: FAIL (min eigenvalue {:.6})",
            pd.min_eigenvalue
        );
    }
    EXIT_OK
}

fn print_vector(name: &str, v: &[f64]) {
    if v.len() <= 12 {
        for (i, value) in v.iter().enumerate() {
            println!("{name}[{i}] = {value:.6}");
        }
    } else {
        let total: f64 = v.iter().sum();
        let min = v.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        let max = v.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
        println!(
            "{name}: n = {}, mean = {:.6}, min = {:.6}, max = {:.6} (full vector via --output)",
            v.len(),
            total / v.len() as f64,
            min,
            max
        );
    }
}

fn equilibrium_json(res: &EquilibriumResult) -> serde_json::Value {
    json!({
        "x": res.x,
        "iterations": res.iterations,
        "converged": res.converged,
        "interior": res.interior,
        "residual": res.residual,
    })
}

fn cmd_solve(args: SolveArgs) -> i32 {
    let loaded = match load_instance(&args.input) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let inst = &loaded.instance;
    let rewards = match (&args.reward, args.rate) {
        (Some(path), None) => match read_file(path).and_then(|t| parse_rewards(&t, inst.n())) {
            Ok(r) => r,
            Err(e) => return input_error(&e),
        },
        (None, Some(rate)) => vec![rate; inst.n()],
        _ => unreachable!("clap enforces reward xor rate"),
    };
    let config = args.solver.config();

    let a1 = check_assumption1(inst);
    if !a1.holds {
        eprintln!(
            "warning: contraction condition fails (max ratio {:.6}); results are best-effort",
            a1.max_ratio
        );
    }

    let primary: EquilibriumResult;
    let mut gap: Option<f64> = None;
    match args.method {
        MethodArg::Closed => match solve_closed_form(inst, &rewards) {
            Ok(res) => primary = res,
            Err(e) => return solver_error(e),
        },
        MethodArg::Br => match solve_br_dynamics(inst, &rewards, &config) {
            Ok(res) => primary = res,
            Err(e) => return solver_error(e),
        },
        MethodArg::Both => {
            let dynamic = match solve_br_dynamics(inst, &rewards, &config) {
                Ok(res) => res,
                Err(e) => return solver_error(e),
            };
            match solve_closed_form(inst, &rewards) {
                Ok(closed) if closed.interior && a1.holds => {
                    gap = Some(
                        dynamic
                            .x
                            .iter()
                            .zip(&closed.x)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0f64, f64::max),
                    );
                }
                Ok(_) => eprintln!(
                    "note: closed form is not an interior equilibrium here; gap not reported"
                ),
                Err(e) => eprintln!("note: closed form unavailable ({e}); gap not reported"),
            }
            primary = dynamic;
        }
    }

    if !primary.converged {
        eprintln!(
            "error: best-response dynamics did not converge within {} sweeps (try --max-iter)",
            primary.iterations
        );
        return EXIT_SOLVER;
    }

    let revenue = csp_revenue(inst, &primary.x, &rewards).expect("dimensions already checked");
    let utility = total_mu_utility(inst, &primary.x, &rewards).expect("dimensions already checked");

    println!("n = {}", inst.n());
    match args.method {
        MethodArg::Br => println!("method = br-dynamics ({} sweeps)", primary.iterations),
        MethodArg::Closed => println!("method = closed-form"),
        MethodArg::Both => println!("method = br-dynamics ({} sweeps)", primary.iterations),
    }
    println!("converged = {}", primary.converged);
    println!("interior = {}", primary.interior);
    println!("residual = {:.3e}", primary.residual);
    if let Some(g) = gap {
        println!("gap vs closed form = {g:.3e}");
    }
    print_vector("x", &primary.x);
    println!("total participation = {:.6}", primary.x.iter().sum::<f64>());
    println!("revenue = {revenue:.6}");
    println!("total mu utility = {utility:.6}");

    if let Some(path) = &args.output {
        let mut doc = equilibrium_json(&primary);
        doc["rewards"] = json!(rewards);
        doc["revenue"] = json!(revenue);
        doc["total_mu_utility"] = json!(utility);
        if let Some(g) = gap {
            doc["gap_vs_closed_form"] = json!(g);
        }
        let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        return emit(Some(path), &text, "solution");
    }
    EXIT_OK
}

fn bound_expectation(loaded: &LoadedInstance) -> ExpectationProfile {
    match loaded.expectation {
        Some(e) => e,
        None => {
            let inst = &loaded.instance;
            let e = ExpectationProfile {
                e_a: inst.mean_a(),
                e_b: inst.mean_b(),
            };
            eprintln!(
                "note: no expectation block given; using empirical means e_a = {:.6}, e_b = {:.6}",
                e.e_a, e.e_b
            );
            e
        }
    }
}

fn cmd_optimize(args: OptimizeArgs) -> i32 {
    let loaded = match load_instance(&args.input) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let inst = &loaded.instance;
    let config = args.solver.config();
    let outcome = match args.regime {
        RegimeArg::Discriminatory => discriminatory_reward(inst, &config),
        RegimeArg::Uniform => uniform_reward(inst, &config),
        RegimeArg::UniformBound => {
            let exp = bound_expectation(&loaded);
            uniform_bound_solution(inst, &exp, &config)
        }
    };
    let sol = match outcome {
        Ok(s) => s,
        Err(e) => return solver_error(e),
    };

    for w in &sol.warnings {
        match w {
            SolutionWarning::Assumption1 { max_ratio } => eprintln!(
                "warning: contraction condition fails (max ratio {max_ratio:.6}); optimum is best-effort"
            ),
            SolutionWarning::NonInterior => eprintln!(
                "warning: optimum is not interior; revenue is the analytic value at the closed form"
            ),
        }
    }

    println!("regime = {}", sol.regime);
    match sol.regime {
        Regime::Discriminatory => {
            print_vector("r*", &sol.rewards);
            println!("mean r* = {:.6}", sol.average_reward);
        }
        Regime::Uniform | Regime::UniformBound => {
            println!("r* = {:.6}", sol.rewards[0]);
        }
    }
    println!("\u{03a0} = {:.6}", sol.revenue);
    println!("interior = {}", sol.equilibrium.interior);
    println!("converged = {}", sol.equilibrium.converged);
    print_vector("x", &sol.equilibrium.x);
    if let Some(fb) = &sol.fallback {
        println!(
            "fallback (clamped game): revenue = {:.6}, participation = {:.6}",
            fb.revenue,
            fb.equilibrium.x.iter().sum::<f64>()
        );
    }

    if let Some(path) = &args.output {
        let doc = json!({
            "regime": sol.regime.label(),
            "rewards": sol.rewards,
            "mean_reward": sol.average_reward,
            "revenue": sol.revenue,
            "equilibrium": equilibrium_json(&sol.equilibrium),
            "mu_utilities": sol.mu_utilities,
            "fallback": sol.fallback.as_ref().map(|fb| json!({
                "revenue": fb.revenue,
                "equilibrium": equilibrium_json(&fb.equilibrium),
            })),
        });
        let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        return emit(Some(path), &text, "solution");
    }
    EXIT_OK
}

fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> Result<Vec<T>, i32>
where
    T::Err: Display,
{
    let mut out = Vec::new();
    for part in raw.split(',') {
        match part.trim().parse::<T>() {
            Ok(v) => out.push(v),
            Err(e) => {
                eprintln!("error: bad {what} value '{}': {e}", part.trim());
                return Err(EXIT_INPUT);
            }
        }
    }
    if out.is_empty() {
        eprintln!("error: empty {what} list");
        return Err(EXIT_INPUT);
    }
    Ok(out)
}

fn finish_sweep(result: SweepResult, output: Option<&PathBuf>) -> i32 {
    for f in &result.failures {
        eprintln!(
            "warning: replicate failed (value {}, seed {}): {}",
            f.sweep_value, f.seed, f.message
        );
    }
    if result.records.is_empty() {
        eprintln!("error: every replicate failed");
        return EXIT_SOLVER;
    }
    eprintln!(
        "{} records ({} failures)",
        result.records.len(),
        result.failures.len()
    );
    emit(output, &records_to_csv(&result.records), "sweep")
}

fn cmd_sweep_n(args: SweepArgs) -> i32 {
    let base = match scenario_config_from_sets(&args.sets) {
        Ok(c) => c,
        Err(e) => return input_error(&e),
    };
    let sizes = match args.values.as_deref() {
        Some(raw) => match parse_list::<usize>(raw, "population") {
            Ok(v) => v,
            Err(code) => return code,
        },
        None => experiments::POPULATION_GRID.to_vec(),
    };
    let result = sweep_population(
        &base,
        &sizes,
        args.replicates,
        args.seed,
        &args.solver.config(),
    );
    finish_sweep(result, args.output.as_ref())
}

fn cmd_sweep_social(args: SweepArgs) -> i32 {
    let base = match scenario_config_from_sets(&args.sets) {
        Ok(c) => c,
        Err(e) => return input_error(&e),
    };
    let means = match args.values.as_deref() {
        Some(raw) => match parse_list::<f64>(raw, "tie strength") {
            Ok(v) => v,
            Err(code) => return code,
        },
        None => experiments::TIE_STRENGTH_GRID.to_vec(),
    };
    let result = sweep_tie_strength(
        &base,
        &means,
        args.replicates,
        args.seed,
        &args.solver.config(),
    );
    finish_sweep(result, args.output.as_ref())
}

fn cmd_case_study(args: CaseStudyArgs) -> i32 {
    let params = match MarketParams::new(args.c, args.mu, args.s, args.t) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let study = match case_study_chain(args.n, args.a, args.b, params, &args.solver.config()) {
        Ok(s) => s,
        Err(e) => return solver_error(e),
    };
    let describe = |name: &str, sol: &RewardSolution| {
        eprintln!(
            "{name}: mean r* = {:.6}, revenue = {:.6}, interior = {}",
            sol.average_reward, sol.revenue, sol.equilibrium.interior
        );
    };
    describe("uniform", &study.uniform);
    describe("discriminatory", &study.discriminatory);
    emit(args.output.as_ref(), &case_rows_to_csv(&study.rows), "case study")
}

fn cmd_scenario_dump(args: ScenarioDumpArgs) -> i32 {
    let mut sets = args.sets.clone();
    if let Some(seed) = args.seed {
        sets.push(format!("seed={seed}"));
    }
    if let Some(n) = args.n {
        sets.push(format!("n={n}"));
    }
    let config = match scenario_config_from_sets(&sets) {
        Ok(c) => c,
        Err(e) => return input_error(&e),
    };
    let generated = match generate_random_instance(&config) {
        Ok(g) => g,
        Err(e) => return solver_error(e),
    };
    eprintln!(
        "n = {}, seed = {}, raw max tie ratio = {:.6}",
        config.n, config.seed, generated.raw_max_ratio
    );
    if generated.assumption1_scale < 1.0 {
        eprintln!(
            "ties rescaled by {:.6} to restore the contraction condition",
            generated.assumption1_scale
        );
    }
    let doc = instance_to_doc(&generated.instance);
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    println!("{text}");
    EXIT_OK
}

fn oracle_line(name: &str, got: f64, expected: f64) -> bool {
    let ok = (got - expected).abs() < 1e-9;
    println!(
        "{}: {name}: expected {expected:.6}, got {got:.6}",
        if ok { "ok" } else { "MISMATCH" }
    );
    ok
}

/// Recompute the worked examples that everything else is tested against.
fn cmd_oracle() -> i32 {
    let config = SolverConfig::default();
    let mut all_ok = true;

    // One participant: a = 2, b = 1, c = 1, mu = 1, s = 4, t = 1.
    let single = MarketInstance::new(
        vec![MuProfile { a: 2.0, b: 1.0 }],
        SocialGraph::zeros(1).unwrap(),
        MarketParams::new(1.0, 1.0, 4.0, 1.0).unwrap(),
    )
    .unwrap();
    match discriminatory_reward(&single, &config) {
        Ok(sol) => {
            all_ok &= oracle_line("single market r*", sol.rewards[0], 2.0 / 3.0);
            all_ok &= oracle_line("single market x", sol.equilibrium.x[0], 5.0 / 6.0);
            all_ok &= oracle_line("single market revenue", sol.revenue, 25.0 / 12.0);
        }
        Err(e) => return solver_error(e),
    }

    // Symmetric pair with tie 0.5 under rewards (1, 1).
    let pair = MarketInstance::new(
        vec![MuProfile { a: 2.0, b: 1.0 }, MuProfile { a: 2.0, b: 1.0 }],
        SocialGraph::from_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap(),
        MarketParams::new(1.0, 1.0, 4.0, 1.0).unwrap(),
    )
    .unwrap();
    let r = vec![1.0, 1.0];
    match solve_br_dynamics(&pair, &r, &config) {
        Ok(res) => {
            all_ok &= oracle_line("pair equilibrium x", res.x[0], 4.0 / 3.0);
            let u = mu_utility(&pair, 0, &res.x, &r).unwrap();
            all_ok &= oracle_line("pair per-user utility", u, 16.0 / 9.0);
        }
        Err(e) => return solver_error(e),
    }
    match cross_validate(&pair, &r, &config) {
        Ok(gap) => all_ok &= oracle_line("pair solver gap", gap, 0.0),
        Err(e) => return solver_error(e),
    }
    match discriminatory_reward(&pair, &config) {
        Ok(sol) => {
            all_ok &= oracle_line("pair optimal r*", sol.rewards[0], 0.5);
            all_ok &= oracle_line("pair optimal revenue", sol.revenue, 5.0);
        }
        Err(e) => return solver_error(e),
    }

    // Limited-information rate with t = 0 collapses to its intercept.
    let graph = SocialGraph::zeros(5).unwrap();
    let params = MarketParams::new(16.0, 0.01, 20.0, 0.0).unwrap();
    let exp = ExpectationProfile::new(15.0, 15.0).unwrap();
    match incomplete_info_bound(&graph, &params, &exp) {
        Ok(bound) => all_ok &= oracle_line("limited-information rate (t = 0)", bound, 0.6),
        Err(e) => return solver_error(e),
    }

    // A short best-response trace replays Algorithm-style convergence.
    match br_dynamics_iterates(&pair, &r, &config) {
        Ok(trace) => {
            let settled = trace.last().unwrap();
            all_ok &= oracle_line("pair trace endpoint", settled[1], 4.0 / 3.0);
        }
        Err(e) => return solver_error(e),
    }

    if all_ok {
        println!("all oracle checks passed");
        EXIT_OK
    } else {
        eprintln!("error: oracle mismatch; the build is not trustworthy");
        EXIT_SOLVER
    }
}
