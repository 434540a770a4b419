//! Trajectory subproblem: first-order models of the expected delay and the
//! propulsion energy around a reference plan, solved as LPs inside a
//! trust-region loop that only accepts steps improving the exact objective.
//!
//! The per-slot speed disc is an inscribed regular 16-gon (max radial error
//! 1.92%) and the pairwise-separation constraint uses the standard
//! first-order norm bound at the reference, so accepted iterates satisfy
//! the exact constraints, not just the linearized ones. The expectation
//! rows carry penalty slacks: an infeasible decision shows up as a penalty
//! in the value (and as a synthetic dual), never as an infeasible LP.

use crate::lp::{solve_lp, LpProblem, LpStatus, Rel, Sense};
use crate::physics::{flight_energy_grad, inv_rate_gu_grad, inv_rate_uh_grad, UnitCosts};
use crate::scenario::{OffloadDecision, Scenario, TrajectoryPlan};
use crate::solver::costs::ExpectedCosts;
use crate::solver::{SolveError, SolverConfig};
use crate::uncertainty::{Distribution, SampleSpace};

/// Semantic identity of an SP LP row; carries enough indices to regroup
/// duals into cut coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpRowKind {
    /// Speed 16-gon facet m for UAV j over slot n.
    Speed { j: usize, n: usize, m: usize },
    /// Linearized separation between UAVs j < jp at free waypoint n.
    Separation { j: usize, jp: usize, n: usize },
    /// Expected per-slot delay cap for (i, n).
    Delay { i: usize, n: usize },
    /// Expected GU energy budget for i.
    GuEnergy { i: usize },
    /// Expected UAV energy budget for j.
    UavEnergy { j: usize },
}

/// A built SP linearization: the LP plus the row map and the bookkeeping
/// constants that live outside the LP objective.
pub struct SpModel {
    pub lp: LpProblem,
    pub row_kinds: Vec<SpRowKind>,
    /// Exact expected delay at the reference (the model's zeroth order).
    pub objective_constant: f64,
    /// Gradient of the expected-delay objective per free coordinate,
    /// ordered as the LP's q variables.
    pub objective_gradient: Vec<f64>,
    /// Penalty contributed by q-independent violated rows kept out of the
    /// LP; added to the model value as a constant.
    pub omitted_penalty: f64,
    /// Synthetic duals (penalty weight) for omitted violated rows.
    pub omitted_duals: Vec<(SpRowKind, f64)>,
    num_q: usize,
    num_uavs: usize,
    num_slots: usize,
}

impl SpModel {
    /// LP variable index of the x-coordinate of UAV j's waypoint n
    /// (interior waypoints only: 1 <= n <= N-1).
    fn qvar(num_slots: usize, j: usize, n: usize) -> usize {
        2 * (j * (num_slots - 1) + (n - 1))
    }

    /// Extracts the trajectory encoded by an LP solution, keeping the
    /// fixed endpoints.
    pub fn trajectory_from(&self, primal: &[f64], reference: &TrajectoryPlan) -> TrajectoryPlan {
        let mut traj = reference.clone();
        for j in 0..self.num_uavs {
            for n in 1..self.num_slots {
                let v = Self::qvar(self.num_slots, j, n);
                traj.set_waypoint(j, n, (primal[v], primal[v + 1]));
            }
        }
        traj
    }

    pub fn num_q_vars(&self) -> usize {
        self.num_q
    }
}

/// Builds the SP linearization at `traj_ref` for fixed decisions and
/// distributions, with a per-coordinate trust region of `trust_radius`
/// meters around the reference.
pub fn linearize_sp(
    traj_ref: &TrajectoryPlan,
    dec: &OffloadDecision,
    dists: &[Distribution],
    sc: &Scenario,
    space: &SampleSpace,
    trust_radius: f64,
    cfg: &SolverConfig,
) -> Result<SpModel, SolveError> {
    let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
    let unit = UnitCosts::compute(sc, traj_ref)?;
    let exp = ExpectedCosts::from_unit(sc, &unit, dists, space, cfg);

    let num_q = if nn >= 2 { 2 * nj * (nn - 1) } else { 0 };
    let is_free = |n: usize| n >= 1 && n < nn;

    // Per-coordinate gradients of 1/R for active links at free waypoints.
    // grad_ug[(i, j, n)] and grad_uh[(j, n)] hold d(1/R)/d(qx, qy).
    let mut grad_ug = vec![[0.0; 2]; ni * nj * nn];
    let mut grad_uh = vec![[0.0; 2]; nj * nn];
    for j in 0..nj {
        let alt = sc.uavs[j].altitude();
        for n in 1..=nn {
            if !is_free(n) {
                continue;
            }
            let xy = traj_ref.waypoint(j, n);
            let needs_uh = (0..ni).any(|i| dec.z(i, j, n));
            if needs_uh {
                let (_, g) =
                    inv_rate_uh_grad(xy, alt, &sc.hap.position, &sc.channel, sc.uavs[j].tx_power);
                grad_uh[j * nn + n - 1] = g;
            }
            for i in 0..ni {
                if dec.x(i, j, n) {
                    let (_, g) = inv_rate_gu_grad(
                        &sc.gus[i].position,
                        xy,
                        alt,
                        &sc.channel,
                        sc.gus[i].tx_power,
                    );
                    grad_ug[(i * nj + j) * nn + n - 1] = g;
                }
            }
        }
    }

    // Objective gradient: sum over active links of sbar * d(1/R)/dq.
    let mut obj_grad = vec![0.0; num_q];
    for j in 0..nj {
        for n in 1..nn.max(1) {
            if !is_free(n) {
                continue;
            }
            let v = SpModel::qvar(nn, j, n);
            for i in 0..ni {
                if dec.x(i, j, n) {
                    let g = grad_ug[(i * nj + j) * nn + n - 1];
                    obj_grad[v] += exp.sbar[i] * g[0];
                    obj_grad[v + 1] += exp.sbar[i] * g[1];
                }
                if dec.z(i, j, n) {
                    let g = grad_uh[j * nn + n - 1];
                    obj_grad[v] += exp.sbar[i] * g[0];
                    obj_grad[v + 1] += exp.sbar[i] * g[1];
                }
            }
        }
    }

    // Variables: q coordinates then penalty slacks (appended as rows are
    // created). Bounds: area box intersected with the trust region.
    let mut lp = LpProblem::new(Sense::Minimize, num_q);
    for j in 0..nj {
        for n in 1..nn.max(1) {
            if !is_free(n) {
                continue;
            }
            let v = SpModel::qvar(nn, j, n);
            let (rx, ry) = traj_ref.waypoint(j, n);
            lp.set_bounds(v, (rx - trust_radius).max(0.0), (rx + trust_radius).min(sc.area_x));
            lp.set_bounds(v + 1, (ry - trust_radius).max(0.0), (ry + trust_radius).min(sc.area_y));
            lp.set_objective(v, obj_grad[v]);
            lp.set_objective(v + 1, obj_grad[v + 1]);
        }
    }

    let mut row_kinds: Vec<SpRowKind> = Vec::new();
    let mut omitted_penalty = 0.0;
    let mut omitted_duals: Vec<(SpRowKind, f64)> = Vec::new();

    // Speed constraints: inscribed regular 16-gon facets.
    let facets = 16usize;
    let apothem_scale = (std::f64::consts::PI / facets as f64).cos();
    for j in 0..nj {
        let h = sc.uavs[j].cruise_speed * sc.time.slot_len * apothem_scale;
        for n in 1..=nn {
            let prev_free = is_free(n - 1);
            let next_free = is_free(n);
            if !prev_free && !next_free {
                continue; // both endpoints fixed (N = 1)
            }
            for m in 0..facets {
                let ang = 2.0 * std::f64::consts::PI * m as f64 / facets as f64;
                let (ux, uy) = (ang.cos(), ang.sin());
                let mut entries: Vec<(usize, f64)> = Vec::with_capacity(4);
                let mut rhs = h;
                if next_free {
                    let v = SpModel::qvar(nn, j, n);
                    entries.push((v, ux));
                    entries.push((v + 1, uy));
                } else {
                    let (fx, fy) = traj_ref.waypoint(j, n);
                    rhs -= ux * fx + uy * fy;
                }
                if prev_free {
                    let v = SpModel::qvar(nn, j, n - 1);
                    entries.push((v, -ux));
                    entries.push((v + 1, -uy));
                } else {
                    let (fx, fy) = traj_ref.waypoint(j, n - 1);
                    rhs += ux * fx + uy * fy;
                }
                lp.add_row_sparse(&entries, Rel::Le, rhs);
                row_kinds.push(SpRowKind::Speed { j, n, m });
            }
        }
    }

    // Pairwise separation at free waypoints, linearized at the reference.
    for j in 0..nj {
        for jp in (j + 1)..nj {
            for n in 1..nn.max(1) {
                if !is_free(n) {
                    continue;
                }
                let (ax, ay) = traj_ref.waypoint(j, n);
                let (bx, by) = traj_ref.waypoint(jp, n);
                let (dx, dy) = (ax - bx, ay - by);
                let norm = (dx * dx + dy * dy).sqrt();
                let (ux, uy) = if norm > 1e-9 { (dx / norm, dy / norm) } else { (1.0, 0.0) };
                let va = SpModel::qvar(nn, j, n);
                let vb = SpModel::qvar(nn, jp, n);
                lp.add_row_sparse(
                    &[(va, ux), (va + 1, uy), (vb, -ux), (vb + 1, -uy)],
                    Rel::Ge,
                    sc.min_separation,
                );
                row_kinds.push(SpRowKind::Separation { j, jp, n });
            }
        }
    }

    // Expectation rows with penalty slacks. Rows whose left side does not
    // depend on any free coordinate stay out of the LP: a violated one
    // contributes its exact penalty as a constant and a synthetic dual at
    // the penalty weight.
    let mut penalized_rows: Vec<(SpRowKind, Vec<(usize, f64)>, f64)> = Vec::new();

    // (delay) per (i, n).
    for i in 0..ni {
        for n in 1..=nn {
            let mut entries: Vec<(usize, f64)> = Vec::new();
            if is_free(n) {
                for j in 0..nj {
                    let v = SpModel::qvar(nn, j, n);
                    let mut gx = 0.0;
                    let mut gy = 0.0;
                    if dec.x(i, j, n) {
                        let g = grad_ug[(i * nj + j) * nn + n - 1];
                        gx += exp.sbar[i] * g[0];
                        gy += exp.sbar[i] * g[1];
                    }
                    if dec.z(i, j, n) {
                        let g = grad_uh[j * nn + n - 1];
                        gx += exp.sbar[i] * g[0];
                        gy += exp.sbar[i] * g[1];
                    }
                    if gx != 0.0 || gy != 0.0 {
                        entries.push((v, gx));
                        entries.push((v + 1, gy));
                    }
                }
            }
            let value_at_ref = exp.expected_slot_delay(dec, i, n);
            let kind = SpRowKind::Delay { i, n };
            if entries.is_empty() {
                let viol = value_at_ref - sc.time.slot_len;
                if viol > 0.0 {
                    omitted_penalty += cfg.penalty_weight * viol;
                    omitted_duals.push((kind, cfg.penalty_weight));
                }
            } else {
                // grad . q <= rhs_const + grad . q_ref  (+ slack)
                let grad_dot_ref: f64 = entries
                    .iter()
                    .map(|&(v, g)| {
                        let (j, n, axis) = unflatten_q(nn, v);
                        let xy = traj_ref.waypoint(j, n);
                        g * if axis == 0 { xy.0 } else { xy.1 }
                    })
                    .sum();
                let rhs = sc.time.slot_len - value_at_ref + grad_dot_ref;
                penalized_rows.push((kind, entries, rhs));
            }
        }
    }

    // (GU energy) per i.
    for i in 0..ni {
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for j in 0..nj {
            for n in 1..nn.max(1) {
                if !is_free(n) || !dec.x(i, j, n) {
                    continue;
                }
                let g = grad_ug[(i * nj + j) * nn + n - 1];
                let v = SpModel::qvar(nn, j, n);
                let w = exp.sbar[i] * sc.gus[i].tx_power;
                entries.push((v, w * g[0]));
                entries.push((v + 1, w * g[1]));
            }
        }
        let value_at_ref = exp.expected_gu_energy(dec, i);
        let kind = SpRowKind::GuEnergy { i };
        if entries.is_empty() {
            let viol = value_at_ref - sc.gus[i].energy_budget;
            if viol > 0.0 {
                omitted_penalty += cfg.penalty_weight * viol;
                omitted_duals.push((kind, cfg.penalty_weight));
            }
        } else {
            let grad_dot_ref: f64 = entries
                .iter()
                .map(|&(v, g)| {
                    let (j, n, axis) = unflatten_q(nn, v);
                    let xy = traj_ref.waypoint(j, n);
                    g * if axis == 0 { xy.0 } else { xy.1 }
                })
                .sum();
            let rhs = sc.gus[i].energy_budget - value_at_ref + grad_dot_ref;
            penalized_rows.push((kind, entries, rhs));
        }
    }

    // (UAV energy) per j: relay gradients plus propulsion gradients over
    // both endpoints of every slot.
    if nn >= 2 {
        for j in 0..nj {
            let mut grad = vec![0.0; num_q];
            for n in 1..=nn {
                // Relay terms at free serving waypoints.
                if is_free(n) {
                    let served: f64 =
                        (0..ni).filter(|&i| dec.z(i, j, n)).map(|i| exp.sbar[i]).sum();
                    if served > 0.0 {
                        let g = grad_uh[j * nn + n - 1];
                        let v = SpModel::qvar(nn, j, n);
                        grad[v] += served * sc.uavs[j].tx_power * g[0];
                        grad[v + 1] += served * sc.uavs[j].tx_power * g[1];
                    }
                }
                // Propulsion over slot n moves with q_{n-1} and q_n.
                let prev = traj_ref.waypoint(j, n - 1);
                let next = traj_ref.waypoint(j, n);
                let (_, gprev, gnext) = flight_energy_grad(prev, next, sc, j);
                if is_free(n - 1) {
                    let v = SpModel::qvar(nn, j, n - 1);
                    grad[v] += gprev[0];
                    grad[v + 1] += gprev[1];
                }
                if is_free(n) {
                    let v = SpModel::qvar(nn, j, n);
                    grad[v] += gnext[0];
                    grad[v + 1] += gnext[1];
                }
            }
            let entries: Vec<(usize, f64)> =
                grad.iter().enumerate().filter(|(_, g)| **g != 0.0).map(|(v, &g)| (v, g)).collect();
            let value_at_ref = exp.expected_uav_energy(dec, j);
            let kind = SpRowKind::UavEnergy { j };
            if entries.is_empty() {
                let viol = value_at_ref - sc.uavs[j].energy_budget;
                if viol > 0.0 {
                    omitted_penalty += cfg.penalty_weight * viol;
                    omitted_duals.push((kind, cfg.penalty_weight));
                }
            } else {
                let grad_dot_ref: f64 = entries
                    .iter()
                    .map(|&(v, g)| {
                        let (jj, n, axis) = unflatten_q(nn, v);
                        let xy = traj_ref.waypoint(jj, n);
                        g * if axis == 0 { xy.0 } else { xy.1 }
                    })
                    .sum();
                let rhs = sc.uavs[j].energy_budget - value_at_ref + grad_dot_ref;
                penalized_rows.push((kind, entries, rhs));
            }
        }
    } else {
        for j in 0..nj {
            let value_at_ref = exp.expected_uav_energy(dec, j);
            let viol = value_at_ref - sc.uavs[j].energy_budget;
            if viol > 0.0 {
                omitted_penalty += cfg.penalty_weight * viol;
                omitted_duals.push((SpRowKind::UavEnergy { j }, cfg.penalty_weight));
            }
        }
    }

    // Materialize penalized rows: one slack variable each.
    for (kind, mut entries, rhs) in penalized_rows {
        let slack = lp.num_vars();
        lp.objective.push(cfg.penalty_weight);
        lp.bounds.push((0.0, f64::INFINITY));
        for row in lp.rows.iter_mut() {
            row.coeffs.push(0.0);
        }
        entries.push((slack, -1.0));
        lp.add_row_sparse(&entries, Rel::Le, rhs);
        row_kinds.push(kind);
    }

    let objective_constant = exp.expected_total_delay(dec);
    Ok(SpModel {
        lp,
        row_kinds,
        objective_constant,
        objective_gradient: obj_grad,
        omitted_penalty,
        omitted_duals,
        num_q,
        num_uavs: nj,
        num_slots: nn,
    })
}

fn unflatten_q(num_slots: usize, var: usize) -> (usize, usize, usize) {
    let axis = var % 2;
    let flat = var / 2;
    let j = flat / (num_slots - 1);
    let n = flat % (num_slots - 1) + 1;
    (j, n, axis)
}

/// Exact objective of the subproblem at a trajectory: expected total delay
/// plus penalty-weighted violations of the expectation constraints.
pub fn true_objective(
    dec: &OffloadDecision,
    dists: &[Distribution],
    traj: &TrajectoryPlan,
    sc: &Scenario,
    space: &SampleSpace,
    cfg: &SolverConfig,
) -> Result<f64, SolveError> {
    let exp = ExpectedCosts::compute(sc, traj, dists, space, cfg)?;
    Ok(exp.expected_total_delay(dec) + cfg.penalty_weight * exp.constraint_violation(dec, sc))
}

/// Result of one converged trajectory solve.
pub struct SpOutcome {
    pub traj: TrajectoryPlan,
    /// Exact objective (expected delay + penalties) at the returned plan.
    pub value: f64,
    /// Nonnegative multipliers for the expectation rows, from the final
    /// LP at the converged reference (synthetic penalty duals included).
    pub duals: Vec<(SpRowKind, f64)>,
    pub sca_iters: usize,
    pub trust_collapsed: bool,
}

/// Trust-region SCA: iterate linearize + LP solve, accepting steps only
/// when the exact objective improves, halving the radius on rejection.
pub fn solve_sp(
    dec: &OffloadDecision,
    dists: &[Distribution],
    traj_init: &TrajectoryPlan,
    sc: &Scenario,
    space: &SampleSpace,
    cfg: &SolverConfig,
) -> Result<SpOutcome, SolveError> {
    let mut traj = traj_init.clone();
    let mut f_curr = true_objective(dec, dists, &traj, sc, space, cfg)?;
    let trust_init = cfg
        .trust_region_init
        .unwrap_or_else(|| 0.5 * sc.uavs.iter().map(|u| u.cruise_speed).fold(f64::INFINITY, f64::min) * sc.time.slot_len);
    let mut rho = trust_init;
    let mut m = 0usize;
    let mut trust_collapsed = false;

    if sc.num_slots() >= 2 {
        while m < cfg.max_sca_iters {
            m += 1;
            let model = linearize_sp(&traj, dec, dists, sc, space, rho, cfg)?;
            let sol = solve_lp(&model.lp)?;
            if sol.status != LpStatus::Optimal {
                return Err(SolveError::SubproblemLp(sol.status));
            }
            let cand = model.trajectory_from(&sol.primal, &traj);
            let f_cand = true_objective(dec, dists, &cand, sc, space, cfg)?;
            if f_cand < f_curr {
                let delta = f_curr - f_cand;
                traj = cand;
                f_curr = f_cand;
                if delta <= cfg.sca_tol {
                    break;
                }
            } else if f_cand - f_curr <= cfg.sca_tol {
                // The model cannot find a materially better step.
                break;
            } else {
                rho *= 0.5;
                if rho < cfg.trust_region_min {
                    trust_collapsed = true;
                    break;
                }
            }
        }
    }

    // One more solve at the converged reference for duals consistent with
    // a linearization at the returned plan; the trajectory does not move.
    let model = linearize_sp(&traj, dec, dists, sc, space, rho, cfg)?;
    let sol = solve_lp(&model.lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(SolveError::SubproblemLp(sol.status));
    }
    m += 1;

    // Row duals: the LP minimizes with <= rows (delay/energy) whose shadow
    // prices are nonpositive; the cut wants lambda >= 0 for rows in
    // g(x) <= 0 form. Speed/separation rows carry no decision dependence
    // and are skipped.
    let mut duals: Vec<(SpRowKind, f64)> = Vec::new();
    for (kind, &y) in model.row_kinds.iter().zip(sol.duals.iter()) {
        match kind {
            SpRowKind::Delay { .. } | SpRowKind::GuEnergy { .. } | SpRowKind::UavEnergy { .. } => {
                let lambda = (-y).max(0.0);
                if lambda > 0.0 {
                    duals.push((*kind, lambda));
                }
            }
            _ => {}
        }
    }
    duals.extend(model.omitted_duals.iter().copied());

    Ok(SpOutcome { traj, value: f_curr, duals, sca_iters: m, trust_collapsed })
}
