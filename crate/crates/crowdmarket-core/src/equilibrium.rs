//! Participation equilibrium under fixed rewards.
//!
//! Two routes to the same point: simultaneous best-response dynamics from a
//! cold start, and the dense closed form `(B - G) x = a + r - c*1`. Under the
//! contraction condition the dynamics converge geometrically and, when the
//! closed-form solution is componentwise positive, both agree.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MarketError, Result};
use crate::linalg::{l1_diff, linf_diff, DenseSolver};
use crate::market::{check_assumption1, MarketInstance};

/// Stopping rule for the best-response dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// L1 tolerance between consecutive sweeps.
    pub epsilon: f64,
    /// Hard cap on best-response sweeps.
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: 1e-9,
            max_iterations: 100_000,
        }
    }
}

impl SolverConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(MarketError::InvalidSolverConfig {
                what: "epsilon must be positive and finite",
            });
        }
        if self.max_iterations == 0 {
            return Err(MarketError::InvalidSolverConfig {
                what: "max_iterations must be at least 1",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    BrDynamics,
    ClosedForm,
}

/// Outcome of an equilibrium computation.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult {
    pub x: Vec<f64>,
    pub method: SolveMethod,
    /// Best-response sweeps executed (zero for the closed form).
    pub iterations: usize,
    /// For the dynamics: the stopping rule fired before the iteration cap.
    /// For the closed form: the solution is interior, hence an actual
    /// equilibrium of the clamped game.
    pub converged: bool,
    /// Every component strictly positive.
    pub interior: bool,
    /// `max_i |x_i - BR_i(x)|` at the returned point.
    pub residual: f64,
    /// Set when the contraction condition fails on this instance; results
    /// are then best-effort.
    pub assumption1_warning: bool,
}

/// One simultaneous best-response sweep:
/// `BR_i(x) = max(0, (a_i + r_i - c + sum_j w_ij x_j) / (2 b_i))`.
pub fn best_response(inst: &MarketInstance, x: &[f64], r: &[f64]) -> Result<Vec<f64>> {
    inst.validate_vector(x, "participation profile")?;
    inst.validate_vector(r, "reward vector")?;
    Ok(best_response_unchecked(inst, x, r))
}

fn best_response_unchecked(inst: &MarketInstance, x: &[f64], r: &[f64]) -> Vec<f64> {
    let n = inst.n();
    let c = inst.params().c;
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let p = inst.profiles()[i];
        let mut ties = 0.0;
        let row = inst.graph().row(i);
        for (j, xj) in x.iter().enumerate() {
            ties += row[j] * xj;
        }
        let unclamped = (p.a + r[i] - c + ties) / (2.0 * p.b);
        next.push(unclamped.max(0.0));
    }
    next
}

fn residual_at(inst: &MarketInstance, x: &[f64], r: &[f64]) -> f64 {
    let br = best_response_unchecked(inst, x, r);
    linf_diff(x, &br)
}

/// Simultaneous best-response dynamics from the cold start `x = 0`,
/// perturbed to `(1 + epsilon) * 1` on the first step so the stopping rule
/// cannot fire vacuously.
pub fn solve_br_dynamics(
    inst: &MarketInstance,
    r: &[f64],
    config: &SolverConfig,
) -> Result<EquilibriumResult> {
    config.validate()?;
    inst.validate_vector(r, "reward vector")?;
    let n = inst.n();
    let mut prev = vec![0.0; n];
    let mut x = vec![1.0 + config.epsilon; n];
    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < config.max_iterations {
        if l1_diff(&x, &prev) <= config.epsilon {
            converged = true;
            break;
        }
        let next = best_response_unchecked(inst, &x, r);
        prev = x;
        x = next;
        iterations += 1;
    }
    if !converged && l1_diff(&x, &prev) <= config.epsilon {
        converged = true;
    }
    let interior = x.iter().all(|&v| v > 0.0);
    let residual = residual_at(inst, &x, r);
    Ok(EquilibriumResult {
        x,
        method: SolveMethod::BrDynamics,
        iterations,
        converged,
        interior,
        residual,
        assumption1_warning: !check_assumption1(inst).holds,
    })
}

/// The full iterate sequence of the dynamics, starting with the cold start
/// and the perturbed first step. Useful for plotting convergence paths.
pub fn br_dynamics_iterates(
    inst: &MarketInstance,
    r: &[f64],
    config: &SolverConfig,
) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    inst.validate_vector(r, "reward vector")?;
    let n = inst.n();
    let mut trace = vec![vec![0.0; n], vec![1.0 + config.epsilon; n]];
    let mut iterations = 0usize;
    while iterations < config.max_iterations {
        let last = &trace[trace.len() - 1];
        let prev = &trace[trace.len() - 2];
        if l1_diff(last, prev) <= config.epsilon {
            break;
        }
        let next = best_response_unchecked(inst, last, r);
        trace.push(next);
        iterations += 1;
    }
    Ok(trace)
}

/// Solve `(B - G) x = a + r - c*1` directly. The result is an equilibrium
/// of the clamped game exactly when it is interior; `converged` reports
/// that, and `residual` measures the best-response gap either way.
pub fn solve_closed_form(inst: &MarketInstance, r: &[f64]) -> Result<EquilibriumResult> {
    inst.validate_vector(r, "reward vector")?;
    let n = inst.n();
    let m = inst.interaction_matrix();
    let solver = DenseSolver::new(n, &m)?;
    let mut rhs = Vec::with_capacity(n);
    for i in 0..n {
        rhs.push(inst.profiles()[i].a + r[i] - inst.params().c);
    }
    let x = solver.solve(&rhs);
    let interior = x.iter().all(|&v| v > 0.0);
    let residual = residual_at(inst, &x, r);
    Ok(EquilibriumResult {
        x,
        method: SolveMethod::ClosedForm,
        iterations: 0,
        converged: interior,
        interior,
        residual,
        assumption1_warning: !check_assumption1(inst).holds,
    })
}

/// Run both solvers and return the L-infinity gap between them.
///
/// Demands the contraction condition and an interior closed form, since
/// outside that regime the two methods legitimately answer different
/// questions (the dynamics respect the clamp, the linear solve does not).
pub fn cross_validate(inst: &MarketInstance, r: &[f64], config: &SolverConfig) -> Result<f64> {
    let a1 = check_assumption1(inst);
    if !a1.holds {
        return Err(MarketError::Assumption1Required {
            max_ratio: a1.max_ratio,
        });
    }
    let closed = solve_closed_form(inst, r)?;
    if !closed.interior {
        return Err(MarketError::InteriorRequired);
    }
    let dynamic = solve_br_dynamics(inst, r, config)?;
    Ok(linf_diff(&closed.x, &dynamic.x))
}
