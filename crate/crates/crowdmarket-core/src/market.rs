//! Market data model: participant profiles, the social tie graph, provider
//! parameters, and the structural checks everything downstream relies on.
//!
//! Participant `i` choosing effort `x_i >= 0` under reward rate `r_i` gets
//!
//! ```text
//! u_i = a_i*x_i - b_i*x_i^2 + x_i * sum_j w_ij*x_j + r_i*x_i - c*x_i
//! ```
//!
//! and the provider collects
//!
//! ```text
//! revenue = mu * sum_i (s*x_i - t*x_i^2) - sum_i r_i*x_i.
//! ```
//!
//! The interaction matrix `B - G` (with `B = diag(2 b_i)` and `G` the tie
//! weights) governs both equilibrium computation and reward optimization;
//! the checks in this module classify it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MarketError, Result};
use crate::linalg::symmetric_eigenvalues;

/// Tie matrices may disagree across the diagonal by at most this much
/// before construction is rejected (see [`symmetrize_average`]).
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalue tolerance for the positive-definiteness report.
pub const PD_TOLERANCE: f64 = 1e-10;

/// One participant: linear benefit coefficient `a` and quadratic effort
/// cost coefficient `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuProfile {
    pub a: f64,
    pub b: f64,
}

impl MuProfile {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let p = MuProfile { a, b };
        p.validate(0)?;
        Ok(p)
    }

    pub(crate) fn validate(&self, index: usize) -> Result<()> {
        if !self.a.is_finite() || !self.b.is_finite() {
            return Err(MarketError::NonFinite {
                what: "profile",
                index,
            });
        }
        if self.a < 0.0 {
            return Err(MarketError::InvalidProfile {
                index,
                field: "a",
                value: self.a,
            });
        }
        if self.b <= 0.0 {
            return Err(MarketError::InvalidProfile {
                index,
                field: "b",
                value: self.b,
            });
        }
        Ok(())
    }
}

/// Provider-side parameters: unit participation cost `c` charged to users,
/// monetization rate `mu`, and the value curve coefficients `s`, `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams {
    pub c: f64,
    pub mu: f64,
    pub s: f64,
    pub t: f64,
}

impl MarketParams {
    pub fn new(c: f64, mu: f64, s: f64, t: f64) -> Result<Self> {
        let p = MarketParams { c, mu, s, t };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        for (field, value) in [("c", self.c), ("mu", self.mu), ("s", self.s), ("t", self.t)] {
            if !value.is_finite() {
                return Err(MarketError::InvalidParam { field, value });
            }
        }
        if self.c < 0.0 {
            return Err(MarketError::InvalidParam {
                field: "c",
                value: self.c,
            });
        }
        if self.mu <= 0.0 {
            return Err(MarketError::InvalidParam {
                field: "mu",
                value: self.mu,
            });
        }
        if self.s <= 0.0 {
            return Err(MarketError::InvalidParam {
                field: "s",
                value: self.s,
            });
        }
        if self.t < 0.0 {
            return Err(MarketError::InvalidParam {
                field: "t",
                value: self.t,
            });
        }
        Ok(())
    }
}

/// Symmetric nonnegative tie weights with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SocialGraph {
    n: usize,
    w: Vec<f64>,
}

impl SocialGraph {
    /// A graph with no ties.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MarketError::EmptyMarket);
        }
        Ok(SocialGraph { n, w: vec![0.0; n * n] })
    }

    /// Build from nested rows, validating shape, symmetry (within
    /// [`SYMMETRY_TOL`], after which the two triangles are averaged so the
    /// stored matrix is exactly symmetric), nonnegativity, and zero diagonal.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(MarketError::EmptyMarket);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MarketError::GraphNotSquare {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let mut flat = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = rows[i][j];
            }
        }
        Self::from_flat(n, flat)
    }

    /// Build from a flat row-major matrix; same validation as [`from_rows`].
    ///
    /// [`from_rows`]: SocialGraph::from_rows
    pub fn from_flat(n: usize, mut w: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(MarketError::EmptyMarket);
        }
        if w.len() != n * n {
            return Err(MarketError::LengthMismatch {
                what: "tie matrix",
                expected: n * n,
                found: w.len(),
            });
        }
        for i in 0..n {
            let d = w[i * n + i];
            if !d.is_finite() {
                return Err(MarketError::NonFinite {
                    what: "tie matrix row",
                    index: i,
                });
            }
            if d != 0.0 {
                return Err(MarketError::NonzeroDiagonal { i, value: d });
            }
            for j in i + 1..n {
                let upper = w[i * n + j];
                let lower = w[j * n + i];
                if !upper.is_finite() || !lower.is_finite() {
                    return Err(MarketError::NonFinite {
                        what: "tie matrix row",
                        index: i,
                    });
                }
                let delta = (upper - lower).abs();
                if delta > SYMMETRY_TOL {
                    return Err(MarketError::AsymmetricTie { i, j, delta });
                }
                let avg = 0.5 * (upper + lower);
                if avg < 0.0 {
                    return Err(MarketError::NegativeTie {
                        i,
                        j,
                        value: avg,
                    });
                }
                w[i * n + j] = avg;
                w[j * n + i] = avg;
            }
        }
        Ok(SocialGraph { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.w[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Set the tie between two distinct participants (both directions).
    pub fn set_tie(&mut self, i: usize, j: usize, weight: f64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(MarketError::IndexOutOfBounds {
                index: i.max(j),
                len: self.n,
            });
        }
        if i == j {
            return Err(MarketError::NonzeroDiagonal { i, value: weight });
        }
        if !weight.is_finite() {
            return Err(MarketError::NonFinite {
                what: "tie weight",
                index: i,
            });
        }
        if weight < 0.0 {
            return Err(MarketError::NegativeTie {
                i,
                j,
                value: weight,
            });
        }
        self.w[i * self.n + j] = weight;
        self.w[j * self.n + i] = weight;
        Ok(())
    }

    /// Multiply every tie by a nonnegative factor (used to restore the
    /// contraction condition on generated graphs).
    pub fn scale(&mut self, rho: f64) {
        for v in &mut self.w {
            *v *= rho;
        }
    }
}

/// Replace a raw square matrix by its symmetric part. This is the explicit
/// repair step for data whose asymmetry exceeds [`SYMMETRY_TOL`];
/// construction never averages silently beyond that tolerance.
pub fn symmetrize_average(rows: &mut [Vec<f64>]) {
    let n = rows.len();
    for i in 0..n {
        for j in i + 1..n.min(rows[i].len()) {
            if j < rows.len() && i < rows[j].len() {
                let avg = 0.5 * (rows[i][j] + rows[j][i]);
                rows[i][j] = avg;
                rows[j][i] = avg;
            }
        }
    }
}

/// A complete, validated market: profiles, ties, and provider parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketInstance {
    profiles: Vec<MuProfile>,
    graph: SocialGraph,
    params: MarketParams,
}

impl MarketInstance {
    pub fn new(
        profiles: Vec<MuProfile>,
        graph: SocialGraph,
        params: MarketParams,
    ) -> Result<Self> {
        if profiles.is_empty() {
            return Err(MarketError::EmptyMarket);
        }
        if graph.n() != profiles.len() {
            return Err(MarketError::LengthMismatch {
                what: "tie matrix vs profiles",
                expected: profiles.len(),
                found: graph.n(),
            });
        }
        for (i, p) in profiles.iter().enumerate() {
            p.validate(i)?;
        }
        params.validate()?;
        Ok(MarketInstance {
            profiles,
            graph,
            params,
        })
    }

    pub fn n(&self) -> usize {
        self.profiles.len()
    }

    pub fn profiles(&self) -> &[MuProfile] {
        &self.profiles
    }

    pub fn graph(&self) -> &SocialGraph {
        &self.graph
    }

    pub fn params(&self) -> &MarketParams {
        &self.params
    }

    /// The dense interaction matrix `B - G`, row-major.
    pub fn interaction_matrix(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = if i == j {
                    2.0 * self.profiles[i].b
                } else {
                    -self.graph.weight(i, j)
                };
            }
        }
        m
    }

    /// Mean of the benefit coefficients.
    pub fn mean_a(&self) -> f64 {
        self.profiles.iter().map(|p| p.a).sum::<f64>() / self.n() as f64
    }

    /// Mean of the cost coefficients.
    pub fn mean_b(&self) -> f64 {
        self.profiles.iter().map(|p| p.b).sum::<f64>() / self.n() as f64
    }

    pub(crate) fn validate_vector(&self, v: &[f64], what: &'static str) -> Result<()> {
        if v.len() != self.n() {
            return Err(MarketError::LengthMismatch {
                what,
                expected: self.n(),
                found: v.len(),
            });
        }
        for (i, value) in v.iter().enumerate() {
            if !value.is_finite() {
                return Err(MarketError::NonFinite { what, index: i });
            }
        }
        Ok(())
    }
}

/// Utility of participant `i` at effort profile `x` under rewards `r`.
pub fn mu_utility(inst: &MarketInstance, i: usize, x: &[f64], r: &[f64]) -> Result<f64> {
    if i >= inst.n() {
        return Err(MarketError::IndexOutOfBounds {
            index: i,
            len: inst.n(),
        });
    }
    inst.validate_vector(x, "participation profile")?;
    inst.validate_vector(r, "reward vector")?;
    let p = inst.profiles()[i];
    let xi = x[i];
    let mut ties = 0.0;
    for (j, xj) in x.iter().enumerate() {
        ties += inst.graph().weight(i, j) * xj;
    }
    Ok(p.a * xi - p.b * xi * xi + xi * ties + r[i] * xi - inst.params().c * xi)
}

/// Provider revenue at effort profile `x` under rewards `r`.
pub fn csp_revenue(inst: &MarketInstance, x: &[f64], r: &[f64]) -> Result<f64> {
    inst.validate_vector(x, "participation profile")?;
    inst.validate_vector(r, "reward vector")?;
    let pr = inst.params();
    let mut value = 0.0;
    let mut paid = 0.0;
    for i in 0..inst.n() {
        value += pr.s * x[i] - pr.t * x[i] * x[i];
        paid += r[i] * x[i];
    }
    Ok(pr.mu * value - paid)
}

/// Sum of all participant utilities.
pub fn total_mu_utility(inst: &MarketInstance, x: &[f64], r: &[f64]) -> Result<f64> {
    inst.validate_vector(x, "participation profile")?;
    inst.validate_vector(r, "reward vector")?;
    let mut total = 0.0;
    for i in 0..inst.n() {
        total += mu_utility(inst, i, x, r)?;
    }
    Ok(total)
}

/// Per-participant view of the contraction condition
/// `sum_j w_ij / (2 b_i) < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assumption1Report {
    pub holds: bool,
    /// `1 - ratio_i` per participant; positive margins mean the condition
    /// holds at that row.
    pub margins: Vec<f64>,
    pub max_ratio: f64,
    /// Participant with the largest ratio.
    pub worst: usize,
}

impl Assumption1Report {
    pub fn min_margin(&self) -> f64 {
        1.0 - self.max_ratio
    }
}

pub fn check_assumption1(inst: &MarketInstance) -> Assumption1Report {
    let n = inst.n();
    let mut margins = Vec::with_capacity(n);
    let mut max_ratio = f64::NEG_INFINITY;
    let mut worst = 0;
    for i in 0..n {
        let ratio = inst.graph().row_sum(i) / (2.0 * inst.profiles()[i].b);
        if ratio > max_ratio {
            max_ratio = ratio;
            worst = i;
        }
        margins.push(1.0 - ratio);
    }
    Assumption1Report {
        holds: max_ratio < 1.0,
        margins,
        max_ratio,
        worst,
    }
}

/// The pricing condition `c >= mean(a) + mu*s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assumption2Report {
    pub holds: bool,
    pub c: f64,
    /// `mean(a) + mu*s`.
    pub threshold: f64,
    /// `c - threshold`.
    pub margin: f64,
}

pub fn check_assumption2(inst: &MarketInstance) -> Assumption2Report {
    let threshold = inst.mean_a() + inst.params().mu * inst.params().s;
    let c = inst.params().c;
    Assumption2Report {
        holds: c >= threshold,
        c,
        threshold,
        margin: c - threshold,
    }
}

/// Definiteness of the interaction matrix `B - G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositiveDefiniteReport {
    pub positive_definite: bool,
    pub min_eigenvalue: f64,
}

/// Full symmetric eigensolve of `B - G`; positive definite when the smallest
/// eigenvalue clears [`PD_TOLERANCE`].
pub fn check_positive_definite(inst: &MarketInstance) -> PositiveDefiniteReport {
    let m = inst.interaction_matrix();
    let eigs = symmetric_eigenvalues(inst.n(), &m);
    let min_eigenvalue = eigs[0];
    PositiveDefiniteReport {
        positive_definite: min_eigenvalue > PD_TOLERANCE,
        min_eigenvalue,
    }
}
