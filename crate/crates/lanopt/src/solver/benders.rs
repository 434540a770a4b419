//! Benders decomposition over the binary offloading decisions.
//!
//! Each iteration solves the trajectory subproblem at the master's current
//! decisions (updating the upper bound), regroups its Lagrangian into an
//! optimality cut that is linear in the decision tensors, and re-solves
//! the master MILP with the accumulated cuts (updating the lower bound).
//! The cut constant is anchored so the cut reproduces the subproblem value
//! exactly at its generating decisions; penalty duals price infeasible
//! decisions out of the master instead of feasibility cuts.

use crate::lp::{LpProblem, Rel, Sense};
use crate::milp::{solve_milp_with, MilpOptions, MilpProblem, MilpStatus};
use crate::physics::{gu_uav_gain, rate_gu_uav, rate_uav_hap};
use crate::scenario::{OffloadDecision, Position3D, Scenario, TrajectoryPlan};
use crate::solver::costs::ExpectedCosts;
use crate::solver::sp::{solve_sp, SpRowKind};
use crate::solver::{BoundsRecord, SolveError, SolverConfig};
use crate::uncertainty::Distribution;
use crate::uncertainty::SampleSpace;

/// An optimality cut `xi >= constant + cx . x + cy . y + cz . z`.
#[derive(Debug, Clone)]
pub struct BendersCut {
    pub constant: f64,
    pub coeff_x: Vec<f64>,
    pub coeff_y: Vec<f64>,
    pub coeff_z: Vec<f64>,
}

impl BendersCut {
    /// Cut value at a decision tensor.
    pub fn eval(&self, dec: &OffloadDecision) -> f64 {
        let (ni, nj, nn) = dec.dims();
        let mut v = self.constant;
        for i in 0..ni {
            for j in 0..nj {
                for n in 1..=nn {
                    let idx = (i * nj + j) * nn + n - 1;
                    if dec.x(i, j, n) {
                        v += self.coeff_x[idx];
                    }
                    if dec.y(i, j, n) {
                        v += self.coeff_y[idx];
                    }
                    if dec.z(i, j, n) {
                        v += self.coeff_z[idx];
                    }
                }
            }
        }
        v
    }
}

/// How a cut prices the trajectory-dependent transmission coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutPricing {
    /// At the converged trajectory. Tight around the generating decision,
    /// which makes it the master's guide, but it can overestimate the
    /// re-optimized subproblem at other decisions, so it never feeds the
    /// reported lower bound.
    FixedTrajectory,
    /// Over each waypoint's reachable set, in the direction that keeps the
    /// anchored cut a global underestimate: closest-point rates for
    /// offloads the master may add, farthest-point rates for ones it may
    /// remove. Looser, but a valid lower bound everywhere.
    Directional,
}

/// Per-(GU, UAV, slot) transmission coefficients under a pricing rule.
/// For a fixed waypoint (slot N, or N = 1) the reachable set is a point
/// and both rules coincide.
struct CutRates {
    /// 1/R^ug per (i, j, n) in the cut direction of x[i,j,n].
    inv_gu: Vec<f64>,
    /// 1/R^uh per (i, j, n) in the cut direction of z[i,j,n].
    inv_uh: Vec<f64>,
}

/// Horizontal-distance interval from a ground point to the reachable set
/// of UAV j's waypoint n (intersection of the two travel discs).
fn reach_interval(p: (f64, f64), sc: &Scenario, j: usize, n: usize) -> (f64, f64) {
    let uav = &sc.uavs[j];
    let nn = sc.num_slots() as f64;
    let step = uav.cruise_speed * sc.time.slot_len;
    let d_start = ((p.0 - uav.start_position.x).powi(2) + (p.1 - uav.start_position.y).powi(2))
        .sqrt();
    let d_end =
        ((p.0 - uav.end_position.x).powi(2) + (p.1 - uav.end_position.y).powi(2)).sqrt();
    let budget_start = n as f64 * step;
    let budget_end = (nn - n as f64) * step;
    let lo = (d_start - budget_start).max(d_end - budget_end).max(0.0);
    let hi = (d_start + budget_start).min(d_end + budget_end);
    (lo, hi.max(lo))
}

fn cut_rates(
    sc: &Scenario,
    dec_ref: &OffloadDecision,
    traj: &TrajectoryPlan,
    pricing: CutPricing,
) -> CutRates {
    let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
    let mut inv_gu = vec![0.0; ni * nj * nn];
    let mut inv_uh = vec![0.0; ni * nj * nn];
    for j in 0..nj {
        let alt = sc.uavs[j].altitude();
        for n in 1..=nn {
            let hap = &sc.hap.position;
            let wp = traj.waypoint(j, n);
            let uh_at = |r: f64| {
                let pos = Position3D::new(hap.x + r, hap.y, alt);
                1.0 / rate_uav_hap(&pos, hap, &sc.channel, sc.uavs[j].tx_power)
            };
            let (uh_add, uh_rem) = match pricing {
                CutPricing::FixedTrajectory => {
                    let r = ((wp.0 - hap.x).powi(2) + (wp.1 - hap.y).powi(2)).sqrt();
                    let v = uh_at(r);
                    (v, v)
                }
                CutPricing::Directional => {
                    let (lo, hi) = reach_interval((hap.x, hap.y), sc, j, n);
                    (uh_at(lo), uh_at(hi))
                }
            };
            for i in 0..ni {
                let gu = &sc.gus[i].position;
                let ug_at = |r: f64| {
                    let pos = Position3D::new(gu.x + r, gu.y, alt);
                    let gain = gu_uav_gain(gu, &pos, &sc.channel).expect("positive altitude");
                    1.0 / rate_gu_uav(gain, &sc.channel, sc.gus[i].tx_power)
                };
                let (ug_add, ug_rem) = match pricing {
                    CutPricing::FixedTrajectory => {
                        let r = ((wp.0 - gu.x).powi(2) + (wp.1 - gu.y).powi(2)).sqrt();
                        let v = ug_at(r);
                        (v, v)
                    }
                    CutPricing::Directional => {
                        let (lo, hi) = reach_interval((gu.x, gu.y), sc, j, n);
                        (ug_at(lo), ug_at(hi))
                    }
                };
                let idx = (i * nj + j) * nn + n - 1;
                inv_gu[idx] = if dec_ref.x(i, j, n) { ug_rem } else { ug_add };
                inv_uh[idx] = if dec_ref.z(i, j, n) { uh_rem } else { uh_add };
            }
        }
    }
    CutRates { inv_gu, inv_uh }
}

/// Regroups the subproblem Lagrangian by decision indicators into a valid
/// optimality cut ([`CutPricing::Directional`]). Coefficients that do not
/// depend on the trajectory (compute delays and energies) enter exactly;
/// transmission coefficients are priced over the reachable waypoint sets
/// in the validity-preserving direction. The constant is anchored so that
/// `eval(dec_ref) == sp_value` exactly.
pub fn build_benders_cut(
    sp_value: f64,
    duals: &[(SpRowKind, f64)],
    dec_ref: &OffloadDecision,
    traj_opt: &TrajectoryPlan,
    dists: &[Distribution],
    sc: &Scenario,
    space: &SampleSpace,
    cfg: &SolverConfig,
) -> Result<BendersCut, SolveError> {
    build_cut_with_pricing(
        sp_value,
        duals,
        dec_ref,
        traj_opt,
        dists,
        sc,
        space,
        cfg,
        CutPricing::Directional,
    )
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn build_cut_with_pricing(
    sp_value: f64,
    duals: &[(SpRowKind, f64)],
    dec_ref: &OffloadDecision,
    traj_opt: &TrajectoryPlan,
    dists: &[Distribution],
    sc: &Scenario,
    space: &SampleSpace,
    cfg: &SolverConfig,
    pricing: CutPricing,
) -> Result<BendersCut, SolveError> {
    let exp = ExpectedCosts::compute(sc, traj_opt, dists, space, cfg)?;
    let rates = cut_rates(sc, dec_ref, traj_opt, pricing);
    let (ni, nj, nn) = (exp.num_gus, exp.num_uavs, exp.num_slots);
    let len = ni * nj * nn;
    let mut cx = vec![0.0; len];
    let mut cy = vec![0.0; len];
    let mut cz = vec![0.0; len];

    // Directional transmission terms: expected tx delay/energy and relay
    // delay/energy per index.
    let t_tx = |i: usize, idx: usize| exp.sbar[i] * rates.inv_gu[idx];
    let e_tx = |i: usize, idx: usize| sc.gus[i].tx_power * exp.sbar[i] * rates.inv_gu[idx];
    let t_uh = |i: usize, idx: usize| exp.sbar[i] * rates.inv_uh[idx];
    let e_uh =
        |i: usize, j: usize, idx: usize| sc.uavs[j].tx_power * exp.sbar[i] * rates.inv_uh[idx];

    // Adds one expected-delay row's decision coefficients with weight w.
    let add_delay_terms = |cx: &mut [f64], cy: &mut [f64], cz: &mut [f64], i: usize, n: usize, w: f64| {
        for j in 0..nj {
            let idx = (i * nj + j) * nn + n - 1;
            cx[idx] += w * (t_tx(i, idx) - exp.t_local[i]);
            cy[idx] += w * exp.t_ucp[i * nj + j];
            cz[idx] += w * (t_uh(i, idx) + exp.t_hcp[i]);
        }
    };

    // Objective: sum of expected per-slot delays.
    for i in 0..ni {
        for n in 1..=nn {
            add_delay_terms(&mut cx, &mut cy, &mut cz, i, n, 1.0);
        }
    }
    // Dualized rows.
    for &(kind, lambda) in duals {
        match kind {
            SpRowKind::Delay { i, n } => {
                add_delay_terms(&mut cx, &mut cy, &mut cz, i, n, lambda);
            }
            SpRowKind::GuEnergy { i } => {
                for j in 0..nj {
                    for n in 1..=nn {
                        let idx = (i * nj + j) * nn + n - 1;
                        cx[idx] += lambda * (e_tx(i, idx) - exp.e_loc[i]);
                    }
                }
            }
            SpRowKind::UavEnergy { j } => {
                for i in 0..ni {
                    for n in 1..=nn {
                        let idx = (i * nj + j) * nn + n - 1;
                        cy[idx] += lambda * exp.e_ucp[i * nj + j];
                        cz[idx] += lambda * e_uh(i, j, idx);
                    }
                }
            }
            SpRowKind::Speed { .. } | SpRowKind::Separation { .. } => {}
        }
    }

    // Anchor: the Lagrangian is linear in (x, y, z), so the cut is the
    // plane through (dec_ref, sp_value) with the regrouped slopes.
    let mut at_ref = 0.0;
    for i in 0..ni {
        for j in 0..nj {
            for n in 1..=nn {
                let idx = (i * nj + j) * nn + n - 1;
                if dec_ref.x(i, j, n) {
                    at_ref += cx[idx];
                }
                if dec_ref.y(i, j, n) {
                    at_ref += cy[idx];
                }
                if dec_ref.z(i, j, n) {
                    at_ref += cz[idx];
                }
            }
        }
    }
    Ok(BendersCut { constant: sp_value - at_ref, coeff_x: cx, coeff_y: cy, coeff_z: cz })
}

/// Master problem over (y, z, xi), with x eliminated through the flow
/// balance x = y + z. Expectation rows are evaluated at the latest
/// trajectory; cuts accumulate across iterations.
fn build_master(
    cuts: &[BendersCut],
    exp: &ExpectedCosts,
    sc: &Scenario,
) -> MilpProblem {
    let (ni, nj, nn) = (exp.num_gus, exp.num_uavs, exp.num_slots);
    let len = ni * nj * nn;
    let y0 = 0;
    let z0 = len;
    let xi = 2 * len;

    let mut lp = LpProblem::new(Sense::Minimize, 2 * len + 1);
    for v in 0..2 * len {
        lp.set_bounds(v, 0.0, 1.0);
    }
    lp.set_bounds(xi, 0.0, f64::INFINITY);
    lp.set_objective(xi, 1.0);

    // Collection: each (i, n) served by at most one UAV.
    for i in 0..ni {
        for n in 1..=nn {
            let entries: Vec<(usize, f64)> = (0..nj)
                .flat_map(|j| {
                    let idx = (i * nj + j) * nn + n - 1;
                    [(y0 + idx, 1.0), (z0 + idx, 1.0)]
                })
                .collect();
            lp.add_row_sparse(&entries, Rel::Le, 1.0);
        }
    }
    // UAV compute quota per (j, n).
    for j in 0..nj {
        for n in 1..=nn {
            let entries: Vec<(usize, f64)> =
                (0..ni).map(|i| (y0 + (i * nj + j) * nn + n - 1, 1.0)).collect();
            lp.add_row_sparse(&entries, Rel::Le, sc.uavs[j].quota as f64);
        }
    }
    // HAP relay quota per n.
    for n in 1..=nn {
        let entries: Vec<(usize, f64)> = (0..ni)
            .flat_map(|i| (0..nj).map(move |j| (z0 + (i * nj + j) * nn + n - 1, 1.0)))
            .collect();
        lp.add_row_sparse(&entries, Rel::Le, sc.hap.quota as f64);
    }
    // Expected per-slot delay caps at the current trajectory.
    for i in 0..ni {
        for n in 1..=nn {
            let mut entries: Vec<(usize, f64)> = Vec::with_capacity(2 * nj);
            for j in 0..nj {
                let idx = (i * nj + j) * nn + n - 1;
                let dx = exp.t_tx[idx] - exp.t_local[i];
                entries.push((y0 + idx, dx + exp.t_ucp[i * nj + j]));
                entries.push((z0 + idx, dx + exp.t_uh[idx] + exp.t_hcp[i]));
            }
            lp.add_row_sparse(&entries, Rel::Le, sc.time.slot_len - exp.t_local[i]);
        }
    }
    // Expected GU energy budgets.
    for i in 0..ni {
        let mut entries: Vec<(usize, f64)> = Vec::with_capacity(2 * nj * nn);
        for j in 0..nj {
            for n in 1..=nn {
                let idx = (i * nj + j) * nn + n - 1;
                let de = exp.e_tx[idx] - exp.e_loc[i];
                entries.push((y0 + idx, de));
                entries.push((z0 + idx, de));
            }
        }
        let rhs = sc.gus[i].energy_budget - nn as f64 * exp.e_loc[i];
        lp.add_row_sparse(&entries, Rel::Le, rhs);
    }
    // Expected UAV energy budgets (propulsion at the current trajectory).
    for j in 0..nj {
        let mut entries: Vec<(usize, f64)> = Vec::with_capacity(2 * ni * nn);
        let flight: f64 = (1..=nn).map(|n| exp.flight[j * nn + n - 1]).sum();
        for i in 0..ni {
            for n in 1..=nn {
                let idx = (i * nj + j) * nn + n - 1;
                entries.push((y0 + idx, exp.e_ucp[i * nj + j]));
                entries.push((z0 + idx, exp.e_uh[idx]));
            }
        }
        lp.add_row_sparse(&entries, Rel::Le, sc.uavs[j].energy_budget - flight);
    }
    // Expected HAP energy budget.
    {
        let mut entries: Vec<(usize, f64)> = Vec::with_capacity(ni * nj * nn);
        for i in 0..ni {
            for j in 0..nj {
                for n in 1..=nn {
                    entries.push((z0 + (i * nj + j) * nn + n - 1, exp.e_hcp[i]));
                }
            }
        }
        lp.add_row_sparse(&entries, Rel::Le, sc.hap.energy_budget);
    }
    // Optimality cuts: constant + cx (y+z) + cy y + cz z <= xi.
    for cut in cuts {
        let mut entries: Vec<(usize, f64)> = Vec::with_capacity(2 * len + 1);
        for idx in 0..len {
            let ye = cut.coeff_x[idx] + cut.coeff_y[idx];
            let ze = cut.coeff_x[idx] + cut.coeff_z[idx];
            if ye != 0.0 {
                entries.push((y0 + idx, ye));
            }
            if ze != 0.0 {
                entries.push((z0 + idx, ze));
            }
        }
        entries.push((xi, -1.0));
        lp.add_row_sparse(&entries, Rel::Le, -cut.constant);
    }

    let mut binary_mask = vec![true; 2 * len + 1];
    binary_mask[xi] = false;
    MilpProblem { base: lp, binary_mask }
}

/// Sound lower bound on the decision problem at the current trajectory:
/// the LP relaxation of the master over the valid (directional) cuts.
fn valid_lower_bound(
    cuts: &[BendersCut],
    exp: &ExpectedCosts,
    sc: &Scenario,
) -> Result<f64, SolveError> {
    let mp = build_master(cuts, exp, sc);
    let sol = crate::lp::solve_lp(&mp.base)?;
    match sol.status {
        crate::lp::LpStatus::Optimal => Ok(sol.objective),
        crate::lp::LpStatus::Infeasible => Err(SolveError::MasterInfeasible),
        other => Err(SolveError::SubproblemLp(other)),
    }
}

/// Probe of the valid-cut master (node-capped MILP): the proposal priced
/// lowest by the sound envelope, its price, and the proven bound.
struct Probe {
    proposal: OffloadDecision,
    price: f64,
    bound: f64,
}

/// `Ok(None)` when the node budget ran out before any feasible point was
/// found; the caller treats that as "no probe available", not as proof of
/// anything.
fn probe_valid_master(
    cuts: &[BendersCut],
    exp: &ExpectedCosts,
    sc: &Scenario,
    cfg: &SolverConfig,
) -> Result<Option<Probe>, SolveError> {
    let mp = build_master(cuts, exp, sc);
    let sol = solve_milp_with(&mp, &MilpOptions { node_limit: cfg.probe_node_limit })?;
    if sol.status == MilpStatus::Infeasible {
        if sol.node_limit_hit {
            return Ok(None);
        }
        return Err(SolveError::MasterInfeasible);
    }
    let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
    Ok(Some(Probe {
        proposal: decisions_from_master(&sol.assignment, ni, nj, nn),
        price: sol.objective,
        bound: sol.bound.min(sol.objective),
    }))
}

fn decisions_from_master(assignment: &[f64], ni: usize, nj: usize, nn: usize) -> OffloadDecision {
    let len = ni * nj * nn;
    let mut dec = OffloadDecision::all_local(ni, nj, nn);
    for i in 0..ni {
        for j in 0..nj {
            for n in 1..=nn {
                let idx = (i * nj + j) * nn + n - 1;
                if assignment[idx] > 0.5 {
                    dec.set_offload(i, j, n, false);
                } else if assignment[len + idx] > 0.5 {
                    dec.set_offload(i, j, n, true);
                }
            }
        }
    }
    dec
}

/// Outcome of one full Benders run at fixed distributions.
pub struct P2Outcome {
    pub decisions: OffloadDecision,
    pub traj: TrajectoryPlan,
    pub value: f64,
    pub trace: Vec<BoundsRecord>,
    pub converged: bool,
    pub benders_iters: usize,
    pub sca_iters: usize,
    pub trust_collapsed: bool,
}

/// Runs the Benders loop at fixed distributions from a feasible warm
/// start, until the guidance gap closes below the configured tolerance or
/// the iteration budget runs out.
///
/// Two cut pools are maintained per iteration: fixed-trajectory cuts feed
/// the master MILP and the termination gap (the classical loop), while
/// directional cuts feed the reported lower-bound trace, which is a sound
/// underestimate of the decision problem and never crosses the upper
/// bound.
pub fn solve_p2(
    dists: &[Distribution],
    sc: &Scenario,
    space: &SampleSpace,
    warm_dec: &OffloadDecision,
    warm_traj: &TrajectoryPlan,
    outer_iter: usize,
    cfg: &SolverConfig,
) -> Result<P2Outcome, SolveError> {
    let mut dec = warm_dec.clone();
    let mut traj = warm_traj.clone();
    let mut guide_cuts: Vec<BendersCut> = Vec::new();
    let mut valid_cuts: Vec<BendersCut> = Vec::new();
    let mut ub = f64::INFINITY;
    let mut guide_lb = f64::NEG_INFINITY;
    let mut lb = f64::NEG_INFINITY;
    let mut incumbent: Option<(OffloadDecision, TrajectoryPlan, f64)> = None;
    let mut trace = Vec::new();
    let mut sca_total = 0usize;
    let mut converged = false;
    let mut trust_collapsed = false;

    let mut omega = 0usize;
    let mut probe_streak = 0usize;
    while omega < cfg.max_benders_iters {
        omega += 1;

        let ub_before = ub;
        let sp = solve_sp(&dec, dists, &traj, sc, space, cfg)?;
        sca_total += sp.sca_iters;
        trust_collapsed |= sp.trust_collapsed;
        traj = sp.traj.clone();
        if sp.value < ub {
            ub = sp.value;
            incumbent = Some((dec.clone(), sp.traj.clone(), sp.value));
        }

        guide_cuts.push(build_cut_with_pricing(
            sp.value,
            &sp.duals,
            &dec,
            &sp.traj,
            dists,
            sc,
            space,
            cfg,
            CutPricing::FixedTrajectory,
        )?);
        valid_cuts.push(build_cut_with_pricing(
            sp.value,
            &sp.duals,
            &dec,
            &sp.traj,
            dists,
            sc,
            space,
            cfg,
            CutPricing::Directional,
        )?);

        let exp = ExpectedCosts::compute(sc, &sp.traj, dists, space, cfg)?;
        let mp = build_master(&guide_cuts, &exp, sc);
        let mp_sol = solve_milp_with(&mp, &MilpOptions { node_limit: cfg.milp_node_limit })?;
        if mp_sol.status == MilpStatus::Infeasible {
            return Err(SolveError::MasterInfeasible);
        }
        guide_lb = guide_lb.max(mp_sol.bound.min(mp_sol.objective));

        // Sound bound; max-accumulated per the algorithm's LB update.
        let vb = valid_lower_bound(&valid_cuts, &exp, sc)?;
        lb = lb.max(vb);

        let guided = ub - guide_lb > cfg.benders_gap;
        let mut certificate = false;
        let mut probes_exhausted = false;
        if guided {
            let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
            dec = decisions_from_master(&mp_sol.assignment, ni, nj, nn);
        } else {
            // Guidance is done; probe the sound envelope for decisions it
            // still prices below the incumbent.
            match probe_valid_master(&valid_cuts, &exp, sc, cfg)? {
                None => probes_exhausted = true,
                Some(probe) => {
                    lb = lb.max(probe.bound);
                    if probe.bound >= ub - cfg.benders_gap {
                        // Sound certificate: nothing is priced materially
                        // below UB.
                        certificate = true;
                    } else if probe.price >= ub - cfg.benders_gap {
                        // No improving candidate within the node budget.
                        probes_exhausted = true;
                    } else {
                        probe_streak = if ub < ub_before { 0 } else { probe_streak + 1 };
                        if probe_streak > cfg.max_probes {
                            probes_exhausted = true;
                        } else {
                            dec = probe.proposal;
                        }
                    }
                }
            }
        }

        if std::env::var_os("LANOPT_TRACE").is_some() {
            eprintln!(
                "[p2] outer {outer_iter} omega {omega}: sp {:.4} (sca {}) ub {ub:.4} \
                 mp xi {:.4} (nodes {}) lb {lb:.4} guided {guided} cert {certificate}",
                sp.value, sp.sca_iters, mp_sol.objective, mp_sol.nodes_explored
            );
        }

        trace.push(BoundsRecord {
            outer: outer_iter,
            omega,
            ub,
            lb,
            cuts: guide_cuts.len(),
            sca_iters: sp.sca_iters,
        });

        if certificate || probes_exhausted {
            converged = true;
            break;
        }
    }

    let (decisions, traj, value) =
        incumbent.ok_or(SolveError::MasterInfeasible)?;
    Ok(P2Outcome {
        decisions,
        traj,
        value,
        trace,
        converged,
        benders_iters: omega,
        sca_iters: sca_total,
        trust_collapsed,
    })
}
