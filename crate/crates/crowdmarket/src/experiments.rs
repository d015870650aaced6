//! Desk-scale simulation studies: population-size and tie-strength sweeps
//! over random markets, and the line-market case study, all emitted as CSV.
//!
//! Replicates use common random numbers: replicate `j` draws with seed
//! `base_seed + j` at every sweep value, so curves across values differ by
//! the parameter, not by the luck of the draw.

use std::fmt::Write as _;

use crowdmarket_core::{
    discriminatory_reward, expectation_of, generate_chain_instance, generate_random_instance,
    uniform_bound_solution, uniform_reward, MarketError, MarketParams, Regime, RewardSolution,
    ScenarioConfig, SolverConfig,
};
use rayon::prelude::*;

/// One CSV row of a sweep: a regime solved on one generated market.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment_id: String,
    pub seed: u64,
    pub sweep_name: String,
    pub sweep_value: f64,
    pub regime: Regime,
    pub revenue: f64,
    pub total_mu_utility: f64,
    pub total_reward_paid: f64,
    pub mean_reward: f64,
    pub interior: bool,
    pub converged: bool,
}

/// A replicate that could not be solved; the sweep carries on without it.
#[derive(Debug, Clone)]
pub struct RowFailure {
    pub sweep_value: f64,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub records: Vec<ExperimentRecord>,
    pub failures: Vec<RowFailure>,
}

fn record_from_solution(
    experiment_id: &str,
    sweep_name: &str,
    sweep_value: f64,
    seed: u64,
    sol: &RewardSolution,
) -> ExperimentRecord {
    ExperimentRecord {
        experiment_id: experiment_id.to_string(),
        seed,
        sweep_name: sweep_name.to_string(),
        sweep_value,
        regime: sol.regime,
        revenue: sol.revenue,
        total_mu_utility: sol.total_mu_utility(),
        total_reward_paid: sol.total_reward_paid(),
        mean_reward: sol.average_reward,
        interior: sol.equilibrium.interior,
        converged: sol.equilibrium.converged,
    }
}

fn solve_replicate(
    experiment_id: &str,
    sweep_name: &str,
    sweep_value: f64,
    config: &ScenarioConfig,
    solver: &SolverConfig,
) -> Result<[ExperimentRecord; 3], MarketError> {
    let generated = generate_random_instance(config)?;
    let inst = &generated.instance;
    let expectation = expectation_of(config)?;
    let disc = discriminatory_reward(inst, solver)?;
    let unif = uniform_reward(inst, solver)?;
    let bound = uniform_bound_solution(inst, &expectation, solver)?;
    let seed = config.seed;
    Ok([
        record_from_solution(experiment_id, sweep_name, sweep_value, seed, &disc),
        record_from_solution(experiment_id, sweep_name, sweep_value, seed, &unif),
        record_from_solution(experiment_id, sweep_name, sweep_value, seed, &bound),
    ])
}

fn run_sweep(
    experiment_id: &str,
    sweep_name: &str,
    jobs: Vec<(f64, ScenarioConfig)>,
    solver: &SolverConfig,
) -> SweepResult {
    let outcomes: Vec<_> = jobs
        .par_iter()
        .map(|(value, config)| {
            solve_replicate(experiment_id, sweep_name, *value, config, solver).map_err(|e| {
                RowFailure {
                    sweep_value: *value,
                    seed: config.seed,
                    message: e.to_string(),
                }
            })
        })
        .collect();
    let mut records = Vec::with_capacity(outcomes.len() * 3);
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(rows) => records.extend(rows),
            Err(f) => failures.push(f),
        }
    }
    sort_records(&mut records);
    SweepResult { records, failures }
}

/// Order rows the way the CSVs are read: by sweep value, then seed, then
/// regime label.
pub fn sort_records(records: &mut [ExperimentRecord]) {
    records.sort_by(|a, b| {
        a.sweep_value
            .total_cmp(&b.sweep_value)
            .then_with(|| a.seed.cmp(&b.seed))
            .then_with(|| a.regime.cmp(&b.regime))
    });
}

/// Sweep the population size, holding the rest of the recipe fixed.
pub fn sweep_population(
    base: &ScenarioConfig,
    sizes: &[usize],
    replicates: u32,
    base_seed: u64,
    solver: &SolverConfig,
) -> SweepResult {
    let mut jobs = Vec::with_capacity(sizes.len() * replicates as usize);
    for &n in sizes {
        for j in 0..replicates {
            let config = ScenarioConfig {
                n,
                seed: base_seed + j as u64,
                ..*base
            };
            jobs.push((n as f64, config));
        }
    }
    run_sweep("sweep-n", "n", jobs, solver)
}

/// Sweep the mean tie strength at fixed population size.
pub fn sweep_tie_strength(
    base: &ScenarioConfig,
    means: &[f64],
    replicates: u32,
    base_seed: u64,
    solver: &SolverConfig,
) -> SweepResult {
    let mut jobs = Vec::with_capacity(means.len() * replicates as usize);
    for &mean_g in means {
        for j in 0..replicates {
            let config = ScenarioConfig {
                mean_g,
                seed: base_seed + j as u64,
                ..*base
            };
            jobs.push((mean_g, config));
        }
    }
    run_sweep("sweep-social", "mean_g", jobs, solver)
}

/// Default grid for the population sweep.
pub const POPULATION_GRID: [usize; 4] = [25, 50, 75, 100];
/// Default grid for the tie-strength sweep.
pub const TIE_STRENGTH_GRID: [f64; 4] = [0.05, 0.10, 0.15, 0.20];
/// Default replicate count for both sweeps.
pub const DEFAULT_REPLICATES: u32 = 30;

/// One node of the line-market case study.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudyRow {
    pub index: usize,
    pub uniform_r: f64,
    pub uniform_x: f64,
    pub disc_r: f64,
    pub disc_x: f64,
    pub uniform_x_norm: f64,
    pub disc_r_norm: f64,
    pub disc_x_norm: f64,
}

#[derive(Debug, Clone)]
pub struct CaseStudy {
    pub rows: Vec<CaseStudyRow>,
    pub uniform: RewardSolution,
    pub discriminatory: RewardSolution,
}

/// Divide by the series maximum; a series peaking at zero is left as zeros.
fn normalize_by_max(v: &[f64]) -> Vec<f64> {
    let max = v.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    if max == 0.0 || !max.is_finite() {
        return vec![0.0; v.len()];
    }
    v.iter().map(|&x| x / max).collect()
}

/// Parameters of the reference line market.
pub fn chain_defaults() -> (usize, f64, f64, MarketParams) {
    (
        51,
        15.0,
        0.1,
        MarketParams {
            c: 16.0,
            mu: 0.01,
            s: 50.0,
            t: 0.05,
        },
    )
}

/// Solve both full-information regimes on a homogeneous line market and
/// tabulate the per-node schedules and participation, raw and normalized.
pub fn case_study_chain(
    n: usize,
    a: f64,
    b: f64,
    params: MarketParams,
    solver: &SolverConfig,
) -> Result<CaseStudy, MarketError> {
    let inst = generate_chain_instance(n, a, b, params)?;
    let uniform = uniform_reward(&inst, solver)?;
    let discriminatory = discriminatory_reward(&inst, solver)?;
    let uniform_x_norm = normalize_by_max(&uniform.equilibrium.x);
    let disc_r_norm = normalize_by_max(&discriminatory.rewards);
    let disc_x_norm = normalize_by_max(&discriminatory.equilibrium.x);
    let rows = (0..n)
        .map(|i| CaseStudyRow {
            index: i,
            uniform_r: uniform.rewards[i],
            uniform_x: uniform.equilibrium.x[i],
            disc_r: discriminatory.rewards[i],
            disc_x: discriminatory.equilibrium.x[i],
            uniform_x_norm: uniform_x_norm[i],
            disc_r_norm: disc_r_norm[i],
            disc_x_norm: disc_x_norm[i],
        })
        .collect();
    Ok(CaseStudy {
        rows,
        uniform,
        discriminatory,
    })
}

pub const RECORD_CSV_HEADER: &str = "experiment_id,seed,sweep_name,sweep_value,regime,revenue,\
total_mu_utility,total_reward_paid,mean_reward,interior,converged";

pub const CASE_CSV_HEADER: &str =
    "index,uniform_r,uniform_x,disc_r,disc_x,uniform_x_norm,disc_r_norm,disc_x_norm";

/// Render sweep records as CSV (numbers at full round-trip precision).
pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(RECORD_CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.experiment_id,
            r.seed,
            r.sweep_name,
            r.sweep_value,
            r.regime,
            r.revenue,
            r.total_mu_utility,
            r.total_reward_paid,
            r.mean_reward,
            r.interior,
            r.converged
        )
        .expect("write to String");
    }
    out
}

/// Render case-study rows as CSV.
pub fn case_rows_to_csv(rows: &[CaseStudyRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CASE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.index,
            r.uniform_r,
            r.uniform_x,
            r.disc_r,
            r.disc_x,
            r.uniform_x_norm,
            r.disc_r_norm,
            r.disc_x_norm
        )
        .expect("write to String");
    }
    out
}
