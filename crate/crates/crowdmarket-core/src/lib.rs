//! Core solver for a two-stage crowdsensing service market.
//!
//! A provider posts rewards, and a population of mobile users chooses
//! continuous participation levels in a game coupled through a weighted
//! social graph. This crate carries the whole analytical pipeline:
//!
//! - market data model and its validity checks ([`market`]),
//! - participation equilibria by best-response iteration and by direct
//!   linear solve ([`equilibrium`]),
//! - optimal reward schedules for the discriminatory, uniform, and
//!   limited-information regimes, plus brute-force search oracles
//!   ([`reward`]),
//! - seeded scenario generation for simulation studies ([`scenario`]).
//!
//! The crate is `no_std`-compatible (`default-features = false`); all
//! transcendental math routes through `libm` so results are bit-identical
//! across platforms and feature sets. File formats, CSV emission, and the
//! command-line front end live in the companion `crowdmarket` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod equilibrium;
pub mod linalg;
mod math;
pub mod market;
pub mod reward;
pub mod rng;
pub mod scenario;

pub use error::MarketError;
pub use equilibrium::{
    best_response, cross_validate, solve_br_dynamics, solve_closed_form, EquilibriumResult,
    SolveMethod, SolverConfig,
};
pub use market::{
    check_assumption1, check_assumption2, check_positive_definite, csp_revenue, mu_utility,
    total_mu_utility, Assumption1Report, Assumption2Report, MarketInstance, MarketParams,
    MuProfile, PositiveDefiniteReport, SocialGraph,
};
pub use reward::{
    average_discriminatory_reward, brute_force_discriminatory, brute_force_uniform,
    discriminatory_reward, incomplete_info_bound, incomplete_info_bound_at_costs,
    uniform_bound_solution, uniform_reward, ExpectationProfile, FallbackEquilibrium, Regime,
    RewardSolution, SolutionWarning,
};
pub use scenario::{
    expectation_of, generate_chain_instance, generate_random_instance, GeneratedInstance,
    ScenarioConfig,
};
