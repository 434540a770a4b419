//! End-to-end checks of the solver stack on tiny instances, with
//! independent oracles: finite differences for the linearization, grid
//! search for the single-waypoint subproblem, and exhaustive enumeration
//! of decision tensors for the Benders loop.

use lanopt::baselines::{solve_baseline, BaselineMode};
use lanopt::harness::{generate_history, generate_scenario, ScenarioOverrides};
use lanopt::scenario::{mbit_to_bits, OffloadDecision, Scenario, TrajectoryPlan};
use lanopt::solver::{
    audit_solution, benders, expected_total_delay, initial_feasible, linearize_sp, solve_drcoto,
    solve_sp, SolverConfig,
};
use lanopt::uncertainty::{build_reference, AmbiguitySet, Distribution, SampleSpace};

fn tiny_overrides() -> ScenarioOverrides {
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(2);
    ov.num_uavs = Some(1);
    ov.num_slots = Some(2);
    ov.uav_quota = Some(1);
    ov.hap_quota = Some(1);
    ov
}

fn tiny_ambiguity(seed: u64, sc: &Scenario, eps: f64) -> AmbiguitySet {
    let space =
        SampleSpace::from_values(vec![mbit_to_bits(0.5), mbit_to_bits(1.5)]).unwrap();
    let hist = generate_history(seed, sc, &space, 40);
    let refs: Vec<Distribution> =
        hist.samples.iter().map(|s| build_reference(s, &space).unwrap()).collect();
    AmbiguitySet::new(space, refs, eps).unwrap()
}

/// All decision tensors satisfying the collection/quota structure for a
/// tiny scenario, enumerated per (GU, slot): local, or (UAV j, compute),
/// or (UAV j, relay).
fn enumerate_decisions(sc: &Scenario) -> Vec<OffloadDecision> {
    let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
    let options = 1 + 2 * nj;
    let cells = ni * nn;
    let total = options.pow(cells as u32);
    let mut out = Vec::new();
    'outer: for code in 0..total {
        let mut dec = OffloadDecision::all_local(ni, nj, nn);
        let mut c = code;
        for cell in 0..cells {
            let (i, n) = (cell / nn, cell % nn + 1);
            let choice = c % options;
            c /= options;
            if choice > 0 {
                let j = (choice - 1) / 2;
                let relay = (choice - 1) % 2 == 1;
                dec.set_offload(i, j, n, relay);
            }
        }
        // Quota filters.
        for n in 1..=nn {
            for j in 0..nj {
                if (0..ni).filter(|&i| dec.y(i, j, n)).count() > sc.uavs[j].quota {
                    continue 'outer;
                }
            }
            let relayed = (0..ni)
                .flat_map(|i| (0..nj).map(move |j| (i, j)))
                .filter(|&(i, j)| dec.z(i, j, n))
                .count();
            if relayed > sc.hap.quota {
                continue 'outer;
            }
        }
        out.push(dec);
    }
    out
}

#[test]
fn initial_feasible_is_all_local_with_generous_budgets() {
    let sc = generate_scenario(7, &ScenarioOverrides::default());
    let amb = tiny_ambiguity(7, &sc, 0.3);
    let (dec, traj, dists) = initial_feasible(&sc, &amb).unwrap();
    for i in 0..sc.num_gus() {
        for n in 1..=sc.num_slots() {
            assert!(dec.is_local(i, n));
        }
    }
    assert_eq!(traj, TrajectoryPlan::straight_line(&sc));
    assert_eq!(dists.len(), sc.num_gus());
    // Determinism.
    let (dec2, traj2, _) = initial_feasible(&sc, &amb).unwrap();
    assert_eq!(dec, dec2);
    assert_eq!(traj, traj2);
}

#[test]
fn initial_feasible_repairs_slow_local_compute() {
    let mut sc = generate_scenario(7, &tiny_overrides());
    // GU 0 cannot meet the slot deadline locally.
    sc.gus[0].local_cpu_rate = 1e8;
    let amb = tiny_ambiguity(7, &sc, 0.0);
    let exp_local =
        amb.references[0].mean(&amb.space) * sc.gus[0].cpu_cycles_per_bit / sc.gus[0].local_cpu_rate;
    assert!(exp_local > sc.time.slot_len, "test setup: local must violate the cap");
    let (dec, _, _) = initial_feasible(&sc, &amb).unwrap();
    for n in 1..=sc.num_slots() {
        assert!(!dec.is_local(0, n), "GU 0 slot {n} should be offloaded");
        assert!(dec.is_local(1, n), "GU 1 stays local");
    }
}

#[test]
fn initial_feasible_fails_without_quota() {
    let mut sc = generate_scenario(7, &tiny_overrides());
    sc.gus[0].local_cpu_rate = 1e8;
    for u in sc.uavs.iter_mut() {
        u.quota = 0;
    }
    sc.hap.quota = 0;
    let amb = tiny_ambiguity(7, &sc, 0.0);
    let err = initial_feasible(&sc, &amb);
    assert!(matches!(err, Err(lanopt::solver::SolveError::NoFeasibleStart(_))), "{err:?}");
}

#[test]
fn linearization_of_local_only_decisions_has_zero_gradient() {
    let sc = generate_scenario(9, &tiny_overrides());
    let amb = tiny_ambiguity(9, &sc, 0.3);
    let dec = OffloadDecision::all_local(2, 1, 2);
    let traj = TrajectoryPlan::straight_line(&sc);
    let cfg = SolverConfig::default();
    let model =
        linearize_sp(&traj, &dec, &amb.references, &sc, &amb.space, 20.0, &cfg).unwrap();
    assert!(model.objective_gradient.iter().all(|&g| g == 0.0));
    // Zeroth-order consistency: the model constant is the exact objective.
    let exact = expected_total_delay(&sc, &dec, &traj, &amb.references, &amb.space, &cfg).unwrap();
    assert!((model.objective_constant - exact).abs() < 1e-12);
}

#[test]
fn linearization_gradient_matches_finite_differences() {
    let sc = generate_scenario(11, &tiny_overrides());
    let amb = tiny_ambiguity(11, &sc, 0.3);
    let cfg = SolverConfig::default();
    let mut dec = OffloadDecision::all_local(2, 1, 2);
    dec.set_offload(0, 0, 1, false);
    dec.set_offload(1, 0, 1, true);
    let mut traj = TrajectoryPlan::straight_line(&sc);
    // Off the straight line but within per-slot reach of both endpoints.
    let (sx, sy) = traj.waypoint(0, 0);
    traj.set_waypoint(0, 1, (sx + 36.0, sy + 15.0));

    let model =
        linearize_sp(&traj, &dec, &amb.references, &sc, &amb.space, 20.0, &cfg).unwrap();
    let f = |xy: (f64, f64)| {
        let mut t = traj.clone();
        t.set_waypoint(0, 1, xy);
        expected_total_delay(&sc, &dec, &t, &amb.references, &amb.space, &cfg).unwrap()
    };
    let (x0, y0) = traj.waypoint(0, 1);
    let h = 1e-3;
    let fd_x = (f((x0 + h, y0)) - f((x0 - h, y0))) / (2.0 * h);
    let fd_y = (f((x0, y0 + h)) - f((x0, y0 - h))) / (2.0 * h);
    let gx = model.objective_gradient[0];
    let gy = model.objective_gradient[1];
    assert!((gx - fd_x).abs() <= 1e-4 * fd_x.abs().max(1e-12), "{gx} vs {fd_x}");
    assert!((gy - fd_y).abs() <= 1e-4 * fd_y.abs().max(1e-12), "{gy} vs {fd_y}");
}

#[test]
fn sp_with_local_decisions_returns_initial_plan() {
    let sc = generate_scenario(13, &tiny_overrides());
    let amb = tiny_ambiguity(13, &sc, 0.3);
    let cfg = SolverConfig::default();
    let dec = OffloadDecision::all_local(2, 1, 2);
    let traj = TrajectoryPlan::straight_line(&sc);
    let out = solve_sp(&dec, &amb.references, &traj, &sc, &amb.space, &cfg).unwrap();
    assert_eq!(out.traj, traj);
    assert!(!out.trust_collapsed);
    // Loop iteration plus the final dual solve.
    assert!(out.sca_iters <= 2, "{}", out.sca_iters);
}

#[test]
fn sp_moves_towards_a_far_gu_and_matches_grid_search() {
    // One UAV, one GU offloading in every slot, GU far from the line.
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(1);
    ov.num_uavs = Some(1);
    ov.num_slots = Some(2);
    let mut sc = generate_scenario(31, &ov);
    sc.gus[0].position = lanopt::Position3D::new(400.0, 700.0, 0.0);
    let amb = tiny_ambiguity(31, &sc, 0.0);
    // Tight SCA so the comparison is against a converged local optimum.
    let mut cfg = SolverConfig::default();
    cfg.sca_tol = 1e-6;
    cfg.max_sca_iters = 200;

    let mut dec = OffloadDecision::all_local(1, 1, 2);
    for n in 1..=2 {
        dec.set_offload(0, 0, n, false);
    }
    let traj = TrajectoryPlan::straight_line(&sc);
    let f0 =
        lanopt::solver::sp::true_objective(&dec, &amb.references, &traj, &sc, &amb.space, &cfg)
            .unwrap();
    let out = solve_sp(&dec, &amb.references, &traj, &sc, &amb.space, &cfg).unwrap();
    assert!(out.value < f0, "objective must strictly improve: {} vs {f0}", out.value);

    let gu = sc.gus[0].position;
    let d_init = {
        let (x, y) = traj.waypoint(0, 1);
        ((x - gu.x).powi(2) + (y - gu.y).powi(2)).sqrt()
    };
    let d_opt = {
        let (x, y) = out.traj.waypoint(0, 1);
        ((x - gu.x).powi(2) + (y - gu.y).powi(2)).sqrt()
    };
    assert!(d_opt < d_init, "trajectory must approach the GU: {d_opt} vs {d_init}");

    // Grid oracle over the reachable disc of the single free waypoint.
    let (sx, sy) = traj.waypoint(0, 0);
    let (ex, ey) = traj.waypoint(0, 2);
    let reach = sc.uavs[0].cruise_speed * sc.time.slot_len;
    let mut grid_best = f64::INFINITY;
    let steps = 200;
    for a in 0..=steps {
        for b in 0..=steps {
            let x = sx - reach + 2.0 * reach * a as f64 / steps as f64;
            let y = sy - reach + 2.0 * reach * b as f64 / steps as f64;
            let to_start = ((x - sx).powi(2) + (y - sy).powi(2)).sqrt();
            let to_end = ((x - ex).powi(2) + (y - ey).powi(2)).sqrt();
            if to_start <= reach && to_end <= reach && (0.0..=sc.area_x).contains(&x) && (0.0..=sc.area_y).contains(&y) {
                let mut t = traj.clone();
                t.set_waypoint(0, 1, (x, y));
                let v = lanopt::solver::sp::true_objective(
                    &dec,
                    &amb.references,
                    &t,
                    &sc,
                    &amb.space,
                    &cfg,
                )
                .unwrap();
                grid_best = grid_best.min(v);
            }
        }
    }
    // The SCA result should match the disc grid up to the grid resolution
    // plus the 16-gon's 1.9% radial inner-approximation of the speed disc.
    assert!(
        (out.value - grid_best).abs() <= 3e-3 * (1.0 + grid_best.abs()),
        "SCA {} vs grid {grid_best}",
        out.value
    );
}

#[test]
fn cut_reproduces_sp_value_and_underestimates_elsewhere() {
    let sc = generate_scenario(17, &tiny_overrides());
    let amb = tiny_ambiguity(17, &sc, 0.3);
    let cfg = SolverConfig::default();
    let dists = &amb.references;

    let all = enumerate_decisions(&sc);
    assert_eq!(all.len(), 49);

    let traj0 = TrajectoryPlan::straight_line(&sc);
    let mut dec_ref = OffloadDecision::all_local(2, 1, 2);
    dec_ref.set_offload(0, 0, 1, true);
    let sp = solve_sp(&dec_ref, dists, &traj0, &sc, &amb.space, &cfg).unwrap();
    let cut = benders::build_benders_cut(
        sp.value, &sp.duals, &dec_ref, &sp.traj, dists, &sc, &amb.space, &cfg,
    )
    .unwrap();

    // Exact at the generating decisions.
    assert!((cut.eval(&dec_ref) - sp.value).abs() < 1e-10);

    // Valid lower bound at every other decision tensor (re-solved SP).
    for dec in &all {
        let v = solve_sp(dec, dists, &traj0, &sc, &amb.space, &cfg).unwrap().value;
        assert!(
            cut.eval(dec) <= v + 1e-5 * (1.0 + v.abs()),
            "cut {} exceeds SP value {v}",
            cut.eval(dec)
        );
    }
}

#[test]
fn cut_underestimates_fifty_random_decisions_on_a_medium_instance() {
    use rand::{Rng, SeedableRng};
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(5);
    ov.num_uavs = Some(2);
    ov.num_slots = Some(4);
    let sc = generate_scenario(61, &ov);
    let amb = tiny_ambiguity(61, &sc, 0.3);
    let cfg = SolverConfig::default();
    let dists = &amb.references;
    let traj0 = TrajectoryPlan::straight_line(&sc);

    let mut dec_ref = OffloadDecision::all_local(5, 2, 4);
    dec_ref.set_offload(0, 0, 1, true);
    dec_ref.set_offload(2, 1, 2, false);
    let sp = solve_sp(&dec_ref, dists, &traj0, &sc, &amb.space, &cfg).unwrap();
    let cut = benders::build_benders_cut(
        sp.value, &sp.duals, &dec_ref, &sp.traj, dists, &sc, &amb.space, &cfg,
    )
    .unwrap();
    assert!((cut.eval(&dec_ref) - sp.value).abs() < 1e-9 * (1.0 + sp.value));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(613);
    let mut checked = 0;
    while checked < 50 {
        let mut dec = OffloadDecision::all_local(5, 2, 4);
        for i in 0..5 {
            for n in 1..=4 {
                if rng.random_range(0.0..1.0) < 0.4 {
                    let j = rng.random_range(0..2);
                    dec.set_offload(i, j, n, rng.random_range(0.0..1.0) < 0.5);
                }
            }
        }
        if !dec.validate(&sc).is_empty() {
            continue;
        }
        let v = solve_sp(&dec, dists, &traj0, &sc, &amb.space, &cfg).unwrap().value;
        assert!(
            cut.eval(&dec) <= v + 1e-5 * (1.0 + v.abs()),
            "cut {} exceeds SP value {v}",
            cut.eval(&dec)
        );
        checked += 1;
    }
}

#[test]
fn cut_with_zero_duals_is_the_expected_delay_plane() {
    // One slot: every waypoint is fixed, the reachable sets are points,
    // and with generous budgets (no duals) the cut must coincide with the
    // expected-delay function at the fixed trajectory everywhere.
    let mut ov = tiny_overrides();
    ov.num_slots = Some(1);
    let sc = generate_scenario(19, &ov);
    let amb = tiny_ambiguity(19, &sc, 0.3);
    let cfg = SolverConfig::default();
    let dists = &amb.references;
    let traj0 = TrajectoryPlan::straight_line(&sc);

    let dec_ref = OffloadDecision::all_local(2, 1, 1);
    let sp = solve_sp(&dec_ref, dists, &traj0, &sc, &amb.space, &cfg).unwrap();
    assert!(sp.duals.is_empty(), "expected no binding rows: {:?}", sp.duals);
    assert_eq!(sp.traj, traj0);
    let cut = benders::build_benders_cut(
        sp.value, &sp.duals, &dec_ref, &sp.traj, dists, &sc, &amb.space, &cfg,
    )
    .unwrap();
    for dec in enumerate_decisions(&sc) {
        let exact =
            expected_total_delay(&sc, &dec, &sp.traj, dists, &amb.space, &cfg).unwrap();
        assert!(
            (cut.eval(&dec) - exact).abs() < 1e-9 * (1.0 + exact),
            "{} vs {exact}",
            cut.eval(&dec)
        );
    }
}

#[test]
fn p2_with_zero_quotas_equals_the_local_closed_form() {
    let mut sc = generate_scenario(23, &tiny_overrides());
    for u in sc.uavs.iter_mut() {
        u.quota = 0;
    }
    sc.hap.quota = 0;
    let amb = tiny_ambiguity(23, &sc, 0.3);
    let cfg = SolverConfig::default();
    let (dec0, traj0, dists) = initial_feasible(&sc, &amb).unwrap();
    let p2 = benders::solve_p2(&dists, &sc, &amb.space, &dec0, &traj0, 1, &cfg).unwrap();

    let mut closed_form = 0.0;
    for i in 0..sc.num_gus() {
        let mean = dists[i].mean(&amb.space);
        closed_form += sc.num_slots() as f64 * mean * sc.gus[i].cpu_cycles_per_bit
            / sc.gus[i].local_cpu_rate;
    }
    assert!(
        (p2.value - closed_form).abs() < 1e-9 * closed_form,
        "{} vs {closed_form}",
        p2.value
    );
    for i in 0..sc.num_gus() {
        for n in 1..=sc.num_slots() {
            assert!(p2.decisions.is_local(i, n));
        }
    }
}

#[test]
fn p2_matches_exhaustive_enumeration_on_a_tiny_instance() {
    let sc = generate_scenario(29, &tiny_overrides());
    let amb = tiny_ambiguity(29, &sc, 0.3);
    let cfg = SolverConfig::default();
    let dists = amb.references.clone();
    let traj0 = TrajectoryPlan::straight_line(&sc);

    // Oracle: converged SCA per candidate, minimum over all valid tensors.
    let mut oracle = f64::INFINITY;
    for dec in enumerate_decisions(&sc) {
        let v = solve_sp(&dec, &dists, &traj0, &sc, &amb.space, &cfg).unwrap().value;
        oracle = oracle.min(v);
    }

    let (dec0, _, _) = initial_feasible(&sc, &amb).unwrap();
    let p2 = benders::solve_p2(&dists, &sc, &amb.space, &dec0, &traj0, 1, &cfg).unwrap();
    assert!(
        (p2.value - oracle).abs() <= 1e-4 * oracle.abs(),
        "benders {} vs oracle {oracle}",
        p2.value
    );

    // Bound discipline along the trace.
    let mut prev_ub = f64::INFINITY;
    let mut prev_lb = f64::NEG_INFINITY;
    for r in &p2.trace {
        assert!(r.ub <= prev_ub + 1e-12);
        assert!(r.lb >= prev_lb - 1e-12);
        assert!(r.lb <= r.ub + 1e-7, "lb {} above ub {}", r.lb, r.ub);
        prev_ub = r.ub;
        prev_lb = r.lb;
    }
    assert!(p2.converged);
}

#[test]
fn drcoto_zero_radius_equals_so_baseline() {
    let sc = generate_scenario(37, &tiny_overrides());
    let amb = tiny_ambiguity(37, &sc, 0.0);
    let cfg = SolverConfig::default();
    let dro = solve_drcoto(&sc, &amb, &cfg).unwrap();
    let so = solve_baseline(BaselineMode::So, &sc, &amb, &cfg).unwrap();
    assert!(
        (dro.objective - so.objective).abs() <= 1e-6 * (1.0 + so.objective.abs()),
        "dro {} vs so {}",
        dro.objective,
        so.objective
    );
}

#[test]
fn drcoto_radius_two_equals_ro_baseline() {
    let sc = generate_scenario(41, &tiny_overrides());
    let amb = tiny_ambiguity(41, &sc, 2.0);
    let cfg = SolverConfig::default();
    let dro = solve_drcoto(&sc, &amb, &cfg).unwrap();
    let ro = solve_baseline(BaselineMode::Ro, &sc, &amb, &cfg).unwrap();
    assert!(
        (dro.objective - ro.objective).abs() <= 1e-6 * (1.0 + ro.objective.abs()),
        "dro {} vs ro {}",
        dro.objective,
        ro.objective
    );
}

#[test]
fn emitted_solutions_pass_the_audit() {
    let sc = generate_scenario(43, &tiny_overrides());
    let amb = tiny_ambiguity(43, &sc, 0.3);
    let cfg = SolverConfig::default();
    let report = solve_drcoto(&sc, &amb, &cfg).unwrap();
    let v = audit_solution(
        &sc,
        &report.decisions,
        &report.trajectories,
        &report.worst_dists,
        &amb.space,
        &cfg,
        1e-6,
    );
    assert!(v.is_empty(), "{v:?}");
    // Ball membership of the adversary's distributions.
    for (d, r) in report.worst_dists.iter().zip(amb.references.iter()) {
        let dist = lanopt::uncertainty::l1_distance(d, r).unwrap();
        assert!(dist <= amb.radius + 1e-7);
    }
}

#[test]
fn total_over_slots_interpretation_rescales_costs() {
    let sc = generate_scenario(59, &tiny_overrides());
    let amb = tiny_ambiguity(59, &sc, 0.3);
    let dec = OffloadDecision::all_local(2, 1, 2);
    let traj = TrajectoryPlan::straight_line(&sc);
    let per_slot = SolverConfig::default();
    let mut total = SolverConfig::default();
    total.sample_interpretation = lanopt::solver::SampleInterpretation::TotalOverSlots;

    let (costs_a, _) =
        lanopt::solver::worst_case_inputs(&dec, &traj, &sc, &amb.space, &per_slot).unwrap();
    let (costs_b, _) =
        lanopt::solver::worst_case_inputs(&dec, &traj, &sc, &amb.space, &total).unwrap();
    let n = sc.num_slots() as f64;
    for (a, b) in costs_a.iter().zip(costs_b.iter()) {
        assert!((a / n - b).abs() <= 1e-12 * a.abs());
    }
}

#[test]
fn outer_alternation_is_monotone_within_tolerance() {
    // Each adversary move cannot decrease the value at fixed decisions,
    // and each decision solve cannot increase it at fixed distributions.
    let mut ov = tiny_overrides();
    ov.num_gus = Some(3);
    ov.num_uavs = Some(2);
    ov.num_slots = Some(3);
    let sc = generate_scenario(53, &ov);
    let amb = tiny_ambiguity(53, &sc, 0.4);
    let cfg = SolverConfig::default();

    let (dec0, traj0, dists0) = initial_feasible(&sc, &amb).unwrap();
    let p2a = benders::solve_p2(&dists0, &sc, &amb.space, &dec0, &traj0, 1, &cfg).unwrap();

    // Adversary response at the returned solution.
    let (costs, rows) = lanopt::solver::worst_case_inputs(
        &p2a.decisions,
        &p2a.traj,
        &sc,
        &amb.space,
        &cfg,
    )
    .unwrap();
    let wc = lanopt::uncertainty::worst_case_distribution(&costs, &amb, &rows).unwrap();
    let value_at_old_dists =
        expected_total_delay(&sc, &p2a.decisions, &p2a.traj, &dists0, &amb.space, &cfg).unwrap();
    assert!(
        wc.objective >= value_at_old_dists - 1e-6 * (1.0 + value_at_old_dists.abs()),
        "adversary move decreased the value: {} vs {value_at_old_dists}",
        wc.objective
    );

    // Next decision solve at the new distributions cannot end above its
    // own warm-start value.
    let start_value = expected_total_delay(
        &sc,
        &p2a.decisions,
        &p2a.traj,
        &wc.distributions,
        &amb.space,
        &cfg,
    )
    .unwrap();
    let p2b = benders::solve_p2(
        &wc.distributions,
        &sc,
        &amb.space,
        &p2a.decisions,
        &p2a.traj,
        2,
        &cfg,
    )
    .unwrap();
    assert!(
        p2b.value <= start_value + 1e-6 * (1.0 + start_value.abs()),
        "decision solve increased the value: {} vs {start_value}",
        p2b.value
    );
}

#[test]
fn determinism_bit_equal_reports() {
    let sc = generate_scenario(47, &tiny_overrides());
    let amb = tiny_ambiguity(47, &sc, 0.3);
    let cfg = SolverConfig::default();
    let a = solve_drcoto(&sc, &amb, &cfg).unwrap();
    let b = solve_drcoto(&sc, &amb, &cfg).unwrap();
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
    assert_eq!(a.decisions, b.decisions);
    assert_eq!(a.trajectories, b.trajectories);
    assert_eq!(
        lanopt::solver::bounds_log_to_csv(&a.bounds_log),
        lanopt::solver::bounds_log_to_csv(&b.bounds_log)
    );
    assert_eq!(
        lanopt::solver::trajectory_to_csv(&a.trajectories),
        lanopt::solver::trajectory_to_csv(&b.trajectories)
    );
}
