//! Joint computation-offloading and UAV-trajectory optimization for
//! low-altitude networks serving ground users under task-size uncertainty.
//!
//! Ground users (GUs) either compute task parts locally or hand them to a
//! cruising UAV, which computes them on board or relays them to a stationary
//! high-altitude platform (HAP). Task sizes are uncertain: each GU carries an
//! L1 ambiguity ball around an empirical reference distribution, and the
//! solver minimizes the worst-case expected total delay over that ball by
//! alternating between
//!
//! * a worst-case-distribution LP (the adversary's move),
//! * Benders decomposition over the binary offloading decisions, and
//! * successive convex approximation of the trajectory subproblem.
//!
//! Everything below the orchestrator is built in-repo: a dense two-phase
//! simplex ([`lp`]), branch-and-bound over binaries ([`milp`]), the channel /
//! delay / energy models ([`physics`]), and the ambiguity-set machinery
//! ([`uncertainty`]). The [`harness`] module generates reproducible scenarios
//! and sweeps, and [`baselines`] provides the deterministic, stochastic, and
//! robust comparison methods.
//!
//! See the `examples/` directory for one runnable example per capability;
//! the `lanopt-cli` crate exposes the same flows as `generate`, `solve`,
//! `sweep`, and `eval` subcommands.

pub mod baselines;
pub mod harness;
pub mod lp;
pub mod milp;
pub mod physics;
pub mod scenario;
pub mod solver;
pub mod uncertainty;

pub use scenario::{
    validate_scenario, ChannelParams, GroundUser, Hap, OffloadDecision, Position3D,
    PropulsionParams, Scenario, TimeGrid, TrajectoryPlan, Uav,
};
pub use solver::{solve_drcoto, SolveReport, SolverConfig};
pub use uncertainty::{AmbiguitySet, Distribution, SampleSpace};
