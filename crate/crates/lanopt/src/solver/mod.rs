//! The full alternating solver: Benders decomposition over offloading
//! decisions (with SCA trajectory subproblems) against the worst-case
//! task-size distribution LP, iterated to a fixed point.
//!
//! One outer iteration solves the min problem at the current distributions
//! ([`benders::solve_p2`]), then lets the adversary respond at the
//! returned decisions and trajectories ([`worst_case_distribution`]);
//! the loop stops when the worst-case value stabilizes. Everything is
//! deterministic for fixed inputs and tolerances.

pub mod benders;
mod costs;
pub mod sp;

pub use benders::{build_benders_cut, solve_p2, BendersCut, P2Outcome};
pub use sp::{linearize_sp, solve_sp, SpModel, SpOutcome, SpRowKind};

use crate::lp::{LpError, LpStatus};
use crate::milp::MilpError;
use crate::physics::PhysicsError;
use crate::scenario::{validate_scenario, OffloadDecision, Scenario, TrajectoryPlan};
use crate::uncertainty::{
    worst_case_distribution, AmbiguitySet, Distribution, ExpectationRow, SampleSpace,
    UncertaintyError,
};
use costs::{effective_size, ExpectedCosts, RouteCoefs};
use std::time::Instant;
use thiserror::Error;

/// How a sample value maps to the size processed in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleInterpretation {
    /// Sample values are per-slot sizes, substituted directly.
    #[default]
    PerSlot,
    /// Sample values are totals, split evenly over the horizon.
    TotalOverSlots,
}

/// Tolerances and budgets. Defaults finish desk-scale runs in minutes;
/// every field is overridable.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// SCA stop: accepted-step improvement below this, seconds.
    pub sca_tol: f64,
    /// Benders stop: UB - LB at or below this, seconds.
    pub benders_gap: f64,
    /// Outer stop: worst-case value change at or below this, seconds.
    pub outer_tol: f64,
    pub max_sca_iters: usize,
    pub max_benders_iters: usize,
    pub max_outer_iters: usize,
    /// Penalty weight on expectation-constraint slacks in the subproblem.
    pub penalty_weight: f64,
    /// Initial trust radius, meters; `None` picks half a slot's flight.
    pub trust_region_init: Option<f64>,
    /// Radius below which the trust region counts as collapsed, meters.
    pub trust_region_min: f64,
    /// Carry decisions/trajectories across outer iterations.
    pub warm_start: bool,
    /// Node budget per master MILP solve.
    pub milp_node_limit: usize,
    /// Node budget for probe solves of the valid-cut master.
    pub probe_node_limit: usize,
    /// Consecutive non-improving probes tolerated after the guidance gap
    /// closes, before the loop accepts the incumbent.
    pub max_probes: usize,
    pub sample_interpretation: SampleInterpretation,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            sca_tol: 1e-3,
            benders_gap: 1e-2,
            outer_tol: 1e-3,
            max_sca_iters: 30,
            max_benders_iters: 40,
            max_outer_iters: 20,
            penalty_weight: 1e4,
            trust_region_init: None,
            trust_region_min: 1e-4,
            warm_start: true,
            milp_node_limit: 20_000,
            probe_node_limit: 50,
            max_probes: 4,
            sample_interpretation: SampleInterpretation::PerSlot,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("scenario is invalid: {0:?}")]
    InvalidScenario(Vec<String>),
    #[error("no feasible start: {0}")]
    NoFeasibleStart(String),
    #[error("initial straight-line trajectories violate constraints: {0:?}")]
    InitialTrajectoryInfeasible(Vec<String>),
    #[error("master problem is infeasible at the current trajectory")]
    MasterInfeasible,
    #[error("subproblem LP ended with status {0:?}")]
    SubproblemLp(LpStatus),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Milp(#[from] MilpError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Uncertainty(#[from] UncertaintyError),
}

/// One Benders iteration's bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRecord {
    pub outer: usize,
    pub omega: usize,
    pub ub: f64,
    pub lb: f64,
    pub cuts: usize,
    pub sca_iters: usize,
}

/// Everything a solve produces: the solution, the adversary's
/// distributions, bound traces, and counters.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Final worst-case expected total delay, seconds.
    pub objective: f64,
    pub decisions: OffloadDecision,
    pub trajectories: TrajectoryPlan,
    pub worst_dists: Vec<Distribution>,
    /// Per-Benders-iteration bounds of the final outer iteration.
    pub ub_trace: Vec<f64>,
    pub lb_trace: Vec<f64>,
    /// Full log across all outer iterations.
    pub bounds_log: Vec<BoundsRecord>,
    pub outer_iters: usize,
    pub benders_iters: usize,
    pub sca_iters: usize,
    pub wall_time: f64,
    /// Outer loop reached its tolerance (vs. the iteration cap).
    pub converged: bool,
    /// Every Benders loop closed its gap.
    pub benders_converged: bool,
    /// Some SCA loop hit the minimum trust radius without acceptance.
    pub trust_collapsed: bool,
}

// ---------------------------------------------------------------------------
// Initialization.
// ---------------------------------------------------------------------------

/// Builds a feasible starting point: reference distributions,
/// straight-line trajectories, and all-local decisions. If local-only
/// violates an expected delay cap, the worst (GU, slot) pairs are
/// offloaded greedily to the nearest UAV with spare quota until the caps
/// hold.
pub fn initial_feasible(
    scenario: &Scenario,
    amb: &AmbiguitySet,
) -> Result<(OffloadDecision, TrajectoryPlan, Vec<Distribution>), SolveError> {
    let dists = amb.references.clone();
    let (dec, traj) =
        initial_feasible_at(scenario, &dists, &amb.space, &SolverConfig::default())?;
    Ok((dec, traj, dists))
}

pub(crate) fn initial_feasible_at(
    sc: &Scenario,
    dists: &[Distribution],
    space: &SampleSpace,
    cfg: &SolverConfig,
) -> Result<(OffloadDecision, TrajectoryPlan), SolveError> {
    let traj = TrajectoryPlan::straight_line(sc);
    let traj_violations = traj.validate(sc, 1e-9);
    if !traj_violations.is_empty() {
        return Err(SolveError::InitialTrajectoryInfeasible(traj_violations));
    }
    let mut dec = OffloadDecision::all_local(sc.num_gus(), sc.num_uavs(), sc.num_slots());
    let exp = ExpectedCosts::compute(sc, &traj, dists, space, cfg)?;

    // Greedy repair of violated per-slot delay caps.
    let tau = sc.time.slot_len;
    for i in 0..sc.num_gus() {
        for n in 1..=sc.num_slots() {
            if exp.expected_slot_delay(&dec, i, n) <= tau {
                continue;
            }
            // UAVs by distance to the GU at this slot's waypoint.
            let mut order: Vec<usize> = (0..sc.num_uavs()).collect();
            let gu = &sc.gus[i].position;
            order.sort_by(|&a, &b| {
                let da = traj.position(a, n, sc).distance(gu);
                let db = traj.position(b, n, sc).distance(gu);
                da.partial_cmp(&db).unwrap().then(a.cmp(&b))
            });
            let mut fixed = false;
            for &j in &order {
                let served = (0..sc.num_gus()).filter(|&ii| dec.y(ii, j, n)).count();
                if served < sc.uavs[j].quota {
                    dec.set_offload(i, j, n, false);
                    if exp.expected_slot_delay(&dec, i, n) <= tau {
                        fixed = true;
                        break;
                    }
                    dec.clear(i, n);
                }
                let relayed: usize = (0..sc.num_gus())
                    .flat_map(|ii| (0..sc.num_uavs()).map(move |jj| (ii, jj)))
                    .filter(|&(ii, jj)| dec.z(ii, jj, n))
                    .count();
                if relayed < sc.hap.quota {
                    dec.set_offload(i, j, n, true);
                    if exp.expected_slot_delay(&dec, i, n) <= tau {
                        fixed = true;
                        break;
                    }
                    dec.clear(i, n);
                }
            }
            if !fixed {
                return Err(SolveError::NoFeasibleStart(format!(
                    "GU {i} slot {n}: no route meets the delay cap with spare quota"
                )));
            }
        }
    }

    // The repaired point must satisfy every expectation budget.
    if exp.constraint_violation(&dec, sc) > 0.0 {
        return Err(SolveError::NoFeasibleStart(
            "energy budgets violated at the repaired starting point".into(),
        ));
    }
    Ok((dec, traj))
}

// ---------------------------------------------------------------------------
// Worst-case inputs at fixed decisions/trajectories.
// ---------------------------------------------------------------------------

/// Aggregated per-(GU, sample) delay costs plus the expectation rows for
/// the worst-case LP, all at fixed decisions and trajectories.
pub fn worst_case_inputs(
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    sc: &Scenario,
    space: &SampleSpace,
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, Vec<ExpectationRow>), SolveError> {
    let rc = RouteCoefs::compute(sc, traj, dec)?;
    let (ni, nj, nn, k) = (sc.num_gus(), sc.num_uavs(), sc.num_slots(), space.len());
    let eff: Vec<f64> = (0..k).map(|kk| effective_size(space, kk, sc, cfg)).collect();

    let mut costs = vec![0.0; ni * k];
    for i in 0..ni {
        let total_bit: f64 = (1..=nn).map(|n| rc.delay_bit[i * nn + n - 1]).sum();
        for kk in 0..k {
            costs[i * k + kk] = eff[kk] * total_bit;
        }
    }

    let mut rows = Vec::new();
    // Per-slot delay caps.
    for i in 0..ni {
        for n in 1..=nn {
            let bit = rc.delay_bit[i * nn + n - 1];
            let mut coeffs = vec![0.0; ni * k];
            for kk in 0..k {
                coeffs[i * k + kk] = eff[kk] * bit;
            }
            rows.push(ExpectationRow { coeffs, rhs: sc.time.slot_len });
        }
    }
    // GU energy budgets.
    for i in 0..ni {
        let bit: f64 = (1..=nn).map(|n| rc.gu_energy_bit[i * nn + n - 1]).sum();
        let mut coeffs = vec![0.0; ni * k];
        for kk in 0..k {
            coeffs[i * k + kk] = eff[kk] * bit;
        }
        rows.push(ExpectationRow { coeffs, rhs: sc.gus[i].energy_budget });
    }
    // UAV energy budgets (propulsion moved to the rhs).
    for j in 0..nj {
        let flight: f64 = (1..=nn).map(|n| rc.flight[j * nn + n - 1]).sum();
        let mut coeffs = vec![0.0; ni * k];
        for i in 0..ni {
            let bit = rc.uav_energy_bit[j * ni + i];
            for kk in 0..k {
                coeffs[i * k + kk] = eff[kk] * bit;
            }
        }
        rows.push(ExpectationRow { coeffs, rhs: sc.uavs[j].energy_budget - flight });
    }
    // HAP energy budget.
    {
        let mut coeffs = vec![0.0; ni * k];
        for i in 0..ni {
            let bit = rc.hap_energy_bit[i];
            for kk in 0..k {
                coeffs[i * k + kk] = eff[kk] * bit;
            }
        }
        rows.push(ExpectationRow { coeffs, rhs: sc.hap.energy_budget });
    }
    Ok((costs, rows))
}

// ---------------------------------------------------------------------------
// The full alternation.
// ---------------------------------------------------------------------------

/// Runs the full alternating scheme and reports the worst-case expected
/// total delay with the decisions, trajectories, and adversary
/// distributions at the fixed point.
pub fn solve_drcoto(
    scenario: &Scenario,
    amb: &AmbiguitySet,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let violations = validate_scenario(scenario);
    if !violations.is_empty() {
        return Err(SolveError::InvalidScenario(violations));
    }

    let space = &amb.space;
    let mut dists = amb.references.clone();
    let (init_dec, init_traj) = initial_feasible_at(scenario, &dists, space, cfg)?;
    let mut dec = init_dec.clone();
    let mut traj = init_traj.clone();

    let mut bounds_log: Vec<BoundsRecord> = Vec::new();
    let mut last_trace: Vec<BoundsRecord> = Vec::new();
    let mut benders_total = 0usize;
    let mut sca_total = 0usize;
    let mut benders_converged = true;
    let mut trust_collapsed = false;
    let mut converged = false;
    let mut objective = f64::INFINITY;
    let mut prev_objective = f64::INFINITY;
    let mut outer = 0usize;

    while outer < cfg.max_outer_iters {
        outer += 1;

        let (warm_dec, warm_traj) = if cfg.warm_start || outer == 1 {
            (dec.clone(), traj.clone())
        } else {
            (init_dec.clone(), init_traj.clone())
        };
        let p2 = benders::solve_p2(&dists, scenario, space, &warm_dec, &warm_traj, outer, cfg)?;
        benders_total += p2.benders_iters;
        sca_total += p2.sca_iters;
        benders_converged &= p2.converged;
        trust_collapsed |= p2.trust_collapsed;
        bounds_log.extend(p2.trace.iter().copied());
        last_trace = p2.trace.clone();
        dec = p2.decisions;
        traj = p2.traj;

        let (costs, rows) = worst_case_inputs(&dec, &traj, scenario, space, cfg)?;
        let wc = worst_case_distribution(&costs, amb, &rows)?;
        objective = wc.objective;
        dists = wc.distributions;

        if (prev_objective - objective).abs() <= cfg.outer_tol {
            converged = true;
            break;
        }
        prev_objective = objective;
    }

    Ok(SolveReport {
        objective,
        decisions: dec,
        trajectories: traj,
        worst_dists: dists,
        ub_trace: last_trace.iter().map(|r| r.ub).collect(),
        lb_trace: last_trace.iter().map(|r| r.lb).collect(),
        bounds_log,
        outer_iters: outer,
        benders_iters: benders_total,
        sca_iters: sca_total,
        wall_time: started.elapsed().as_secs_f64(),
        converged,
        benders_converged,
        trust_collapsed,
    })
}

// ---------------------------------------------------------------------------
// Exact re-validation of emitted solutions.
// ---------------------------------------------------------------------------

/// Re-validates a solution against every constraint with exact norms and
/// the expectations under the given distributions, at relative tolerance
/// `tol`. Returns one message per violation.
pub fn audit_solution(
    sc: &Scenario,
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    dists: &[Distribution],
    space: &SampleSpace,
    cfg: &SolverConfig,
    tol: f64,
) -> Vec<String> {
    let mut v = traj.validate(sc, tol);
    v.extend(dec.validate(sc));

    let exp = match ExpectedCosts::compute(sc, traj, dists, space, cfg) {
        Ok(e) => e,
        Err(e) => {
            v.push(format!("cost evaluation failed: {e}"));
            return v;
        }
    };
    let tau = sc.time.slot_len;
    for i in 0..sc.num_gus() {
        for n in 1..=sc.num_slots() {
            let d = exp.expected_slot_delay(dec, i, n);
            if d > tau * (1.0 + tol) {
                v.push(format!("GU {i} slot {n}: expected delay {d:.6} s exceeds {tau} s"));
            }
        }
        let e = exp.expected_gu_energy(dec, i);
        if e > sc.gus[i].energy_budget * (1.0 + tol) {
            v.push(format!("GU {i}: expected energy {e:.6} J exceeds budget"));
        }
    }
    for j in 0..sc.num_uavs() {
        let e = exp.expected_uav_energy(dec, j);
        if e > sc.uavs[j].energy_budget * (1.0 + tol) {
            v.push(format!("UAV {j}: expected energy {e:.6} J exceeds budget"));
        }
    }
    let eh = exp.expected_hap_energy(dec);
    if eh > sc.hap.energy_budget * (1.0 + tol) {
        v.push(format!("HAP: expected energy {eh:.6} J exceeds budget"));
    }
    v
}

/// Expected total delay of a fixed solution under fixed distributions
/// (the objective functional, exact physics).
pub fn expected_total_delay(
    sc: &Scenario,
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    dists: &[Distribution],
    space: &SampleSpace,
    cfg: &SolverConfig,
) -> Result<f64, SolveError> {
    let exp = ExpectedCosts::compute(sc, traj, dists, space, cfg)?;
    Ok(exp.expected_total_delay(dec))
}

// ---------------------------------------------------------------------------
// Solution dumps (CSV).
// ---------------------------------------------------------------------------

/// Solve log: one row per Benders iteration.
pub fn bounds_log_to_csv(log: &[BoundsRecord]) -> String {
    let mut out = String::from("outer,omega,ub,lb,cuts,sca_iters\n");
    for r in log {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.outer, r.omega, r.ub, r.lb, r.cuts, r.sca_iters
        ));
    }
    out
}

/// Decision dump: one row per (i, j, n) with the three indicators.
pub fn decisions_to_csv(dec: &OffloadDecision) -> String {
    let (ni, nj, nn) = dec.dims();
    let mut out = String::from("i,j,n,x,y,z\n");
    for i in 0..ni {
        for j in 0..nj {
            for n in 1..=nn {
                out.push_str(&format!(
                    "{i},{j},{n},{},{},{}\n",
                    dec.x(i, j, n) as u8,
                    dec.y(i, j, n) as u8,
                    dec.z(i, j, n) as u8
                ));
            }
        }
    }
    out
}

/// Parses a decision dump with dimensions taken from the scenario.
pub fn decisions_from_csv(text: &str, sc: &Scenario) -> Result<OffloadDecision, String> {
    let mut dec = OffloadDecision::all_local(sc.num_gus(), sc.num_uavs(), sc.num_slots());
    for (lineno, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 6 {
            return Err(format!("line {}: expected 6 cells", lineno + 1));
        }
        let parse =
            |s: &str| s.trim().parse::<usize>().map_err(|e| format!("line {}: {e}", lineno + 1));
        let (i, j, n) = (parse(cells[0])?, parse(cells[1])?, parse(cells[2])?);
        let (x, y, z) = (parse(cells[3])?, parse(cells[4])?, parse(cells[5])?);
        if x == 1 {
            if y + z != 1 {
                return Err(format!("line {}: x set but y + z != 1", lineno + 1));
            }
            dec.set_offload(i, j, n, z == 1);
        }
    }
    Ok(dec)
}

/// Trajectory dump: one row per (j, n) waypoint, meters.
pub fn trajectory_to_csv(traj: &TrajectoryPlan) -> String {
    let mut out = String::from("j,n,x_m,y_m\n");
    for j in 0..traj.num_uavs() {
        for n in 0..=traj.num_slots() {
            let (x, y) = traj.waypoint(j, n);
            out.push_str(&format!("{j},{n},{x},{y}\n"));
        }
    }
    out
}

/// Parses a trajectory dump with dimensions taken from the scenario.
pub fn trajectory_from_csv(text: &str, sc: &Scenario) -> Result<TrajectoryPlan, String> {
    let mut traj = TrajectoryPlan::straight_line(sc);
    for (lineno, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 4 {
            return Err(format!("line {}: expected 4 cells", lineno + 1));
        }
        let j: usize =
            cells[0].trim().parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
        let n: usize =
            cells[1].trim().parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
        let x: f64 = cells[2].trim().parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
        let y: f64 = cells[3].trim().parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
        traj.set_waypoint(j, n, (x, y));
    }
    Ok(traj)
}
