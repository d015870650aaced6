//! Provider-side reward optimization.
//!
//! Three regimes:
//!
//! - **discriminatory**: one reward rate per participant, full knowledge;
//! - **uniform**: a single rate for everyone, full knowledge;
//! - **uniform-bound**: a single rate computed from distributional knowledge
//!   only (means of the benefit/cost coefficients), a lower bound on the
//!   rate that keeps expected participation worthwhile.
//!
//! Writing `v = a - c*1` and `K = (B - G)^{-1}`, the interior equilibrium
//! under rewards `r` is `x = K (v + r)` and revenue is concave in `r`
//! whenever `B - G` is positive definite, so the optima below come from
//! first-order conditions turned into linear solves. Every returned
//! [`RewardSolution`] evaluates the closed-form equilibrium at the optimal
//! rewards and reports honestly, via flags and a fallback, when that point
//! is not interior (which the pricing condition `c >= mean(a) + mu*s`
//! in fact forces; see the equilibrium flags before trusting a revenue
//! number as attained rather than analytic).

use alloc::vec;
use alloc::vec::Vec;

use crate::equilibrium::{solve_br_dynamics, solve_closed_form, EquilibriumResult, SolverConfig};
use crate::error::{MarketError, Result};
use crate::linalg::DenseSolver;
use crate::market::{check_assumption1, csp_revenue, mu_utility, MarketInstance, MarketParams, SocialGraph};

/// Reward-setting regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    Discriminatory,
    Uniform,
    UniformBound,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Discriminatory, Regime::Uniform, Regime::UniformBound];

    pub fn label(self) -> &'static str {
        match self {
            Regime::Discriminatory => "discriminatory",
            Regime::Uniform => "uniform",
            Regime::UniformBound => "uniform-bound",
        }
    }
}

impl core::fmt::Display for Regime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Population means available to a provider that cannot observe individual
/// coefficients: `e_a = E[a_i]`, `e_b = E[b_i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationProfile {
    pub e_a: f64,
    pub e_b: f64,
}

impl ExpectationProfile {
    pub fn new(e_a: f64, e_b: f64) -> Result<Self> {
        let p = ExpectationProfile { e_a, e_b };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !self.e_a.is_finite() || self.e_a < 0.0 {
            return Err(MarketError::InvalidParam {
                field: "e_a",
                value: self.e_a,
            });
        }
        if !self.e_b.is_finite() || self.e_b <= 0.0 {
            return Err(MarketError::InvalidParam {
                field: "e_b",
                value: self.e_b,
            });
        }
        Ok(())
    }
}

/// Caveats attached to a [`RewardSolution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionWarning {
    /// The contraction condition fails, so the interior analysis is on
    /// shaky ground for this instance.
    Assumption1 { max_ratio: f64 },
    /// The closed-form equilibrium at the optimal rewards has non-positive
    /// components; the reported revenue is the analytic value at that
    /// point, and `fallback` carries what the clamped game actually does.
    NonInterior,
}

/// The clamped-game equilibrium computed by best-response dynamics when the
/// closed form is not interior, with the revenue actually attained there.
#[derive(Debug, Clone, PartialEq)]
pub struct FallbackEquilibrium {
    pub equilibrium: EquilibriumResult,
    pub revenue: f64,
}

/// An optimal reward schedule together with its induced equilibrium and
/// accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardSolution {
    pub regime: Regime,
    pub rewards: Vec<f64>,
    /// Closed-form equilibrium at `rewards`; check `interior`/`converged`.
    pub equilibrium: EquilibriumResult,
    /// Revenue evaluated at `equilibrium.x` — analytic when non-interior.
    pub revenue: f64,
    pub mu_utilities: Vec<f64>,
    pub average_reward: f64,
    pub warnings: Vec<SolutionWarning>,
    pub fallback: Option<FallbackEquilibrium>,
}

impl RewardSolution {
    pub fn total_reward_paid(&self) -> f64 {
        self.rewards
            .iter()
            .zip(&self.equilibrium.x)
            .map(|(r, x)| r * x)
            .sum()
    }

    pub fn total_mu_utility(&self) -> f64 {
        self.mu_utilities.iter().sum()
    }
}

fn assemble(
    inst: &MarketInstance,
    regime: Regime,
    rewards: Vec<f64>,
    config: &SolverConfig,
) -> Result<RewardSolution> {
    let equilibrium = solve_closed_form(inst, &rewards)?;
    let revenue = csp_revenue(inst, &equilibrium.x, &rewards)?;
    let mut mu_utilities = Vec::with_capacity(inst.n());
    for i in 0..inst.n() {
        mu_utilities.push(mu_utility(inst, i, &equilibrium.x, &rewards)?);
    }
    let average_reward = rewards.iter().sum::<f64>() / rewards.len() as f64;
    let mut warnings = Vec::new();
    if equilibrium.assumption1_warning {
        warnings.push(SolutionWarning::Assumption1 {
            max_ratio: check_assumption1(inst).max_ratio,
        });
    }
    let fallback = if equilibrium.interior {
        None
    } else {
        warnings.push(SolutionWarning::NonInterior);
        let dynamic = solve_br_dynamics(inst, &rewards, config)?;
        let dynamic_revenue = csp_revenue(inst, &dynamic.x, &rewards)?;
        Some(FallbackEquilibrium {
            equilibrium: dynamic,
            revenue: dynamic_revenue,
        })
    };
    Ok(RewardSolution {
        regime,
        rewards,
        equilibrium,
        revenue,
        mu_utilities,
        average_reward,
        warnings,
        fallback,
    })
}

/// Optimal discriminatory schedule.
///
/// The first-order condition reduces to one symmetric solve for the induced
/// participation profile,
///
/// ```text
/// (2(B - G) + 2*mu*t*I) x* = mu*s*1 + (a - c*1),
/// ```
///
/// after which `r* = (B - G) x* - (a - c*1)`.
pub fn discriminatory_reward(inst: &MarketInstance, config: &SolverConfig) -> Result<RewardSolution> {
    config.validate()?;
    let n = inst.n();
    let pr = *inst.params();
    let m = inst.interaction_matrix();
    let mut m2 = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m2[i * n + j] = 2.0 * m[i * n + j];
        }
        m2[i * n + i] += 2.0 * pr.mu * pr.t;
    }
    let solver = DenseSolver::new(n, &m2)?;
    let mut rhs = Vec::with_capacity(n);
    for p in inst.profiles() {
        rhs.push(pr.mu * pr.s + p.a - pr.c);
    }
    let x_star = solver.solve(&rhs);
    let mut rewards = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[i * n + j] * x_star[j];
        }
        rewards.push(row - (inst.profiles()[i].a - pr.c));
    }
    assemble(inst, Regime::Discriminatory, rewards, config)
}

/// Mean of the optimal discriminatory rewards — the headline quantity for
/// comparing schedules across population sizes.
pub fn average_discriminatory_reward(inst: &MarketInstance, config: &SolverConfig) -> Result<f64> {
    Ok(discriminatory_reward(inst, config)?.average_reward)
}

/// Optimal uniform rate. With `y = K(a - c*1)` and `z = K*1`,
///
/// ```text
/// r* = (mu*s*sum(z) - 2*mu*t*(y.z) - sum(y)) / (2*mu*t*(z.z) + 2*sum(z)).
/// ```
pub fn uniform_reward(inst: &MarketInstance, config: &SolverConfig) -> Result<RewardSolution> {
    config.validate()?;
    let n = inst.n();
    let pr = *inst.params();
    let m = inst.interaction_matrix();
    let solver = DenseSolver::new(n, &m)?;
    let mut v = Vec::with_capacity(n);
    for p in inst.profiles() {
        v.push(p.a - pr.c);
    }
    let y = solver.solve(&v);
    let z = solver.solve(&vec![1.0; n]);
    let sum_z: f64 = z.iter().sum();
    let sum_y: f64 = y.iter().sum();
    let yz: f64 = y.iter().zip(&z).map(|(a, b)| a * b).sum();
    let zz: f64 = z.iter().zip(&z).map(|(a, b)| a * b).sum();
    let denom = 2.0 * pr.mu * pr.t * zz + 2.0 * sum_z;
    if denom == 0.0 || !denom.is_finite() {
        return Err(MarketError::Singular {
            factorization: "uniform first-order condition",
            pivot: 0,
        });
    }
    let r_star = (pr.mu * pr.s * sum_z - 2.0 * pr.mu * pr.t * yz - sum_y) / denom;
    assemble(inst, Regime::Uniform, vec![r_star; n], config)
}

fn bound_from_costs(
    graph: &SocialGraph,
    params: &MarketParams,
    e_a: f64,
    cost_at: impl Fn(usize) -> f64,
) -> Result<f64> {
    let n = graph.n();
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = if i == j {
                4.0 * cost_at(i) + 2.0 * params.mu * params.t
            } else {
                -2.0 * graph.weight(i, j)
            };
        }
    }
    let solver = DenseSolver::new(n, &m)?;
    let q = solver.solve(&vec![1.0; n]);
    let total: f64 = q.iter().sum();
    let head = 0.5 * (params.c - e_a) + 0.5 * params.mu * params.s;
    let slope = params.mu * params.s + e_a - params.c;
    Ok(head - (params.mu * params.t / n as f64) * slope * total)
}

/// Lower bound on the uniform rate when only the population means of the
/// coefficients are known:
///
/// ```text
/// r >= (c - e_a)/2 + mu*s/2
///      - (mu*t/n) * (mu*s + e_a - c) * 1' [4*e_b*I - 2G + 2*mu*t*I]^{-1} 1.
/// ```
///
/// At `t = 0` this is exactly `(c - e_a)/2 + mu*s/2`.
pub fn incomplete_info_bound(
    graph: &SocialGraph,
    params: &MarketParams,
    exp: &ExpectationProfile,
) -> Result<f64> {
    params.validate()?;
    exp.validate()?;
    bound_from_costs(graph, params, exp.e_a, |_| exp.e_b)
}

/// The same bound evaluated at a realized draw of the cost coefficients
/// instead of their mean — the integrand for Monte Carlo comparisons
/// against [`incomplete_info_bound`], which by convexity of the matrix
/// functional sits below the average of these.
pub fn incomplete_info_bound_at_costs(
    graph: &SocialGraph,
    params: &MarketParams,
    e_a: f64,
    b: &[f64],
) -> Result<f64> {
    params.validate()?;
    if !e_a.is_finite() || e_a < 0.0 {
        return Err(MarketError::InvalidParam {
            field: "e_a",
            value: e_a,
        });
    }
    if b.len() != graph.n() {
        return Err(MarketError::LengthMismatch {
            what: "cost vector",
            expected: graph.n(),
            found: b.len(),
        });
    }
    for (i, &bi) in b.iter().enumerate() {
        if !bi.is_finite() || bi <= 0.0 {
            return Err(MarketError::InvalidProfile {
                index: i,
                field: "b",
                value: bi,
            });
        }
    }
    bound_from_costs(graph, params, e_a, |i| b[i])
}

/// Apply the incomplete-information rate to a concrete instance: rewards
/// are the bound broadcast to everyone, and the equilibrium/revenue are
/// whatever that rate actually induces on the realized market.
pub fn uniform_bound_solution(
    inst: &MarketInstance,
    exp: &ExpectationProfile,
    config: &SolverConfig,
) -> Result<RewardSolution> {
    config.validate()?;
    let rate = incomplete_info_bound(inst.graph(), inst.params(), exp)?;
    assemble(inst, Regime::UniformBound, vec![rate; inst.n()], config)
}

fn grid_value(lo: f64, hi: f64, steps: usize, k: usize) -> f64 {
    lo + (hi - lo) * k as f64 / (steps - 1) as f64
}

fn validate_grid(lo: f64, hi: f64, steps: usize) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(MarketError::InvalidGrid {
            what: "bounds must be finite with lo < hi",
        });
    }
    if steps < 2 {
        return Err(MarketError::InvalidGrid {
            what: "need at least two grid points",
        });
    }
    Ok(())
}

/// Equilibrium of the clamped game at the given rewards: the closed form
/// when interior, best-response dynamics otherwise.
fn clamped_equilibrium_x(
    inst: &MarketInstance,
    rewards: &[f64],
    config: &SolverConfig,
) -> Result<Vec<f64>> {
    let closed = solve_closed_form(inst, rewards)?;
    if closed.interior {
        return Ok(closed.x);
    }
    Ok(solve_br_dynamics(inst, rewards, config)?.x)
}

/// Exhaustive scan of uniform rates over an even grid. Returns the rate and
/// revenue of the best grid point (ties keep the lowest rate). Revenue is
/// measured at the clamped-game equilibrium, so this is a slow but honest
/// check on [`uniform_reward`] wherever the optimum is interior.
pub fn brute_force_uniform(
    inst: &MarketInstance,
    lo: f64,
    hi: f64,
    steps: usize,
    config: &SolverConfig,
) -> Result<(f64, f64)> {
    validate_grid(lo, hi, steps)?;
    config.validate()?;
    let n = inst.n();
    let mut best_r = lo;
    let mut best_rev = f64::NEG_INFINITY;
    for k in 0..steps {
        let r = grid_value(lo, hi, steps, k);
        let rewards = vec![r; n];
        let x = clamped_equilibrium_x(inst, &rewards, config)?;
        let rev = csp_revenue(inst, &x, &rewards)?;
        if rev > best_rev {
            best_rev = rev;
            best_r = r;
        }
    }
    Ok((best_r, best_rev))
}

/// Max markets the discriminatory brute force will scan; the grid has
/// `steps^n` points.
pub const BRUTE_FORCE_MAX_N: usize = 3;

/// Exhaustive scan of discriminatory schedules over the product grid.
/// Ties keep the lexicographically smallest schedule.
pub fn brute_force_discriminatory(
    inst: &MarketInstance,
    lo: f64,
    hi: f64,
    steps: usize,
    config: &SolverConfig,
) -> Result<(Vec<f64>, f64)> {
    validate_grid(lo, hi, steps)?;
    config.validate()?;
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(MarketError::BruteForceTooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    let mut indices = vec![0usize; n];
    let mut rewards = vec![0.0; n];
    let mut best: Option<(Vec<f64>, f64)> = None;
    loop {
        for (slot, &k) in rewards.iter_mut().zip(indices.iter()) {
            *slot = grid_value(lo, hi, steps, k);
        }
        let x = clamped_equilibrium_x(inst, &rewards, config)?;
        let rev = csp_revenue(inst, &x, &rewards)?;
        let better = match &best {
            None => true,
            Some((_, b)) => rev > *b,
        };
        if better {
            best = Some((rewards.clone(), rev));
        }
        // Odometer increment, last coordinate fastest, so schedules appear
        // in lexicographic order and the first maximum encountered is the
        // lexicographically least.
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < steps {
                break;
            }
            indices[pos] = 0;
            if pos == 0 {
                return Ok(best.expect("grid has at least one point"));
            }
        }
    }
}
