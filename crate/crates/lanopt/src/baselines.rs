//! Comparison methods: deterministic (DO), stochastic (SO), and robust
//! (RO) variants, each a single Benders run under a fixed distribution
//! rule: no outer alternation.
//!
//! DO collapses each GU's reference to the sample nearest its mean, SO
//! keeps the references, RO puts unit mass on the largest sample. With
//! slack side constraints the optimal values order as
//! SO <= worst-case <= RO by ambiguity-set containment.

use crate::scenario::Scenario;
use crate::solver::{
    benders, initial_feasible_at, BoundsRecord, SolveError, SolveReport, SolverConfig,
};
use crate::uncertainty::{AmbiguitySet, Distribution};
use std::time::Instant;

/// Which fixed-distribution rule to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMode {
    Do,
    So,
    Ro,
}

impl BaselineMode {
    pub fn tag(self) -> &'static str {
        match self {
            BaselineMode::Do => "do",
            BaselineMode::So => "so",
            BaselineMode::Ro => "ro",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "do" => Some(BaselineMode::Do),
            "so" => Some(BaselineMode::So),
            "ro" => Some(BaselineMode::Ro),
            _ => None,
        }
    }
}

/// The fixed distributions a baseline optimizes against.
pub fn baseline_distributions(mode: BaselineMode, amb: &AmbiguitySet) -> Vec<Distribution> {
    let k = amb.space.len();
    match mode {
        BaselineMode::So => amb.references.clone(),
        BaselineMode::Ro => (0..amb.num_gus()).map(|_| Distribution::unit_mass(k, k - 1)).collect(),
        BaselineMode::Do => amb
            .references
            .iter()
            .map(|r| {
                let mean = r.mean(&amb.space);
                // Nearest sample value; ties break to the smaller sample.
                let mut best = 0usize;
                let mut best_dist = f64::INFINITY;
                for (kk, &v) in amb.space.values().iter().enumerate() {
                    let d = (v - mean).abs();
                    if d < best_dist - 1e-12 {
                        best = kk;
                        best_dist = d;
                    }
                }
                Distribution::unit_mass(k, best)
            })
            .collect(),
    }
}

/// Runs one baseline: fixes the distributions per the mode and solves the
/// decision/trajectory problem once.
pub fn solve_baseline(
    mode: BaselineMode,
    scenario: &Scenario,
    amb: &AmbiguitySet,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let violations = crate::scenario::validate_scenario(scenario);
    if !violations.is_empty() {
        return Err(SolveError::InvalidScenario(violations));
    }
    let dists = baseline_distributions(mode, amb);
    let space = &amb.space;
    let (dec0, traj0) = initial_feasible_at(scenario, &dists, space, cfg)?;
    let p2 = benders::solve_p2(&dists, scenario, space, &dec0, &traj0, 1, cfg)?;

    let trace: Vec<BoundsRecord> = p2.trace.clone();
    Ok(SolveReport {
        objective: p2.value,
        decisions: p2.decisions,
        trajectories: p2.traj,
        worst_dists: dists,
        ub_trace: trace.iter().map(|r| r.ub).collect(),
        lb_trace: trace.iter().map(|r| r.lb).collect(),
        bounds_log: trace,
        outer_iters: 1,
        benders_iters: p2.benders_iters,
        sca_iters: p2.sca_iters,
        wall_time: started.elapsed().as_secs_f64(),
        converged: p2.converged,
        benders_converged: p2.converged,
        trust_collapsed: p2.trust_collapsed,
    })
}
