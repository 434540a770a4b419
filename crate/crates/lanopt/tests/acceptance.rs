//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers. Oracles live in `common/oracles.rs` and are
//! independent of the implementation paths they check.

#[path = "common/oracles.rs"]
mod oracles;

use std::time::Instant;

use lanopt::baselines::{solve_baseline, BaselineMode};
use lanopt::harness::{
    ambiguity_from_history, default_sample_space, generate_history,
    generate_scenario, run_sweep, solve_method, ExperimentConfig, Method, ScenarioOverrides,
};
use lanopt::lp::{solve_lp, LpProblem, LpStatus, Rel, Sense};
use lanopt::milp::{solve_milp, MilpProblem, MilpStatus};
use lanopt::scenario::{defaults, mbit_to_bits, OffloadDecision, Scenario, TrajectoryPlan};
use lanopt::solver::{
    audit_solution, benders, expected_total_delay, initial_feasible, linearize_sp, solve_drcoto,
    solve_sp, SolverConfig,
};
use lanopt::uncertainty::{
    worst_case_distribution, AmbiguitySet, Distribution, SampleSpace,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn build_ambiguity(seed: u64, scenario: &Scenario, eps: f64, space: &SampleSpace) -> AmbiguitySet {
    let history = generate_history(seed, scenario, space, defaults::HISTORY_SAMPLES);
    ambiguity_from_history(&history.samples, space, eps).expect("history fits the space")
}

fn sweep_config(seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        seed,
        gu_counts: vec![6, 9, 12, 15],
        eps_values: vec![0.1, 0.3, 0.5],
        quota_values: vec![1, 2, 3],
        eval_datasets: 5,
        output_dir: std::env::temp_dir().join("lanopt-acceptance"),
        num_slots: 5,
    }
}

/// Criterion 1: on seeded tiny instances, the Benders loop matches
/// exhaustive enumeration over all valid decision tensors with converged
/// SCA per candidate, within relative 1e-4.
#[test]
fn criterion_01_benders_matches_enumeration() {
    let started = Instant::now();
    let cfg = SolverConfig::default();
    let space =
        SampleSpace::from_values(vec![mbit_to_bits(0.5), mbit_to_bits(1.5)]).unwrap();
    let mut worst_rel: f64 = 0.0;
    for seed in 1..=10u64 {
        let mut ov = ScenarioOverrides::default();
        ov.num_gus = Some(2);
        ov.num_uavs = Some(1);
        ov.num_slots = Some(2);
        ov.uav_quota = Some(1);
        ov.hap_quota = Some(1);
        let sc = generate_scenario(seed, &ov);
        let amb = build_ambiguity(seed, &sc, 0.3, &space);
        let dists = amb.references.clone();
        let traj0 = TrajectoryPlan::straight_line(&sc);

        let mut oracle = f64::INFINITY;
        for dec in oracles::enumerate_decisions(&sc) {
            let v = solve_sp(&dec, &dists, &traj0, &sc, &amb.space, &cfg).unwrap().value;
            oracle = oracle.min(v);
        }

        let (dec0, _, _) = initial_feasible(&sc, &amb).unwrap();
        let p2 = benders::solve_p2(&dists, &sc, &amb.space, &dec0, &traj0, 1, &cfg).unwrap();
        let rel = (p2.value - oracle).abs() / oracle.abs();
        worst_rel = worst_rel.max(rel);
        assert!(rel <= 1e-4, "seed {seed}: benders {} vs enumeration {oracle}", p2.value);
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed <= 120.0, "criterion 1 budget exceeded: {elapsed:.1} s");
    println!(
        "criterion 01 PASS: benders == enumeration on 10 tiny instances \
         (worst rel err {worst_rel:.2e}, {elapsed:.1} s)"
    );
}

/// Criterion 2: the worst-case LP matches product-simplex grid search
/// (step 0.01) within 1e-3 absolute objective on 20 seeded instances.
#[test]
fn criterion_02_worst_case_matches_grid() {
    let started = Instant::now();
    let space = SampleSpace::from_values(vec![2e5, 5e5, 1e6]).unwrap();
    let mut worst_abs: f64 = 0.0;
    for seed in 1..=20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + seed);
        let num_gus = 1 + (seed % 2) as usize;
        // References on the 0.01 grid: integer counts out of 100.
        let mut references = Vec::new();
        let mut ref_probs = Vec::new();
        for _ in 0..num_gus {
            let a = rng.random_range(0..=100u32);
            let b = rng.random_range(0..=(100 - a));
            let c = 100 - a - b;
            let probs = vec![a as f64 / 100.0, b as f64 / 100.0, c as f64 / 100.0];
            references.push(Distribution::new(probs.clone()).unwrap());
            ref_probs.push(probs);
        }
        let radius = 2.0 * rng.random_range(0..=50u32) as f64 / 100.0;
        let amb = AmbiguitySet::new(space.clone(), references, radius).unwrap();
        let costs: Vec<f64> =
            (0..num_gus * 3).map(|_| rng.random_range(0.0..1.0)).collect();

        let grid_best = oracles::worst_case_by_grid(&costs, &ref_probs, radius);
        let wc = worst_case_distribution(&costs, &amb, &[]).unwrap();
        let abs = (wc.objective - grid_best).abs();
        worst_abs = worst_abs.max(abs);
        assert!(
            abs <= 1e-3,
            "seed {seed}: lp {} vs grid {grid_best} (radius {radius})",
            wc.objective
        );
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed <= 60.0, "criterion 2 budget exceeded: {elapsed:.1} s");
    println!(
        "criterion 02 PASS: worst-case LP == 0.01 grid on 20 instances \
         (worst abs err {worst_abs:.2e}, {elapsed:.1} s)"
    );
}

/// Criterion 3: radius 0 reproduces the stochastic baseline and radius 2
/// (the whole simplex) reproduces the robust baseline, within 1e-6, on 5
/// seeds. Warm-starting across outer iterations is disabled so repeated
/// inner solves of the stationary problem take identical paths (a repeat
/// under a warm start may keep polishing the incumbent, which is the
/// flag's documented purpose).
#[test]
fn criterion_03_degenerate_radius_identities() {
    let mut cfg = SolverConfig::default();
    cfg.warm_start = false;
    let space = default_sample_space();
    let mut worst: f64 = 0.0;
    for seed in 1..=5u64 {
        let mut ov = ScenarioOverrides::default();
        ov.num_gus = Some(6);
        ov.num_uavs = Some(2);
        ov.num_slots = Some(4);
        let sc = generate_scenario(seed, &ov);

        let amb0 = build_ambiguity(seed, &sc, 0.0, &space);
        let dro0 = solve_drcoto(&sc, &amb0, &cfg).unwrap();
        let so = solve_baseline(BaselineMode::So, &sc, &amb0, &cfg).unwrap();
        let d0 = (dro0.objective - so.objective).abs() / (1.0 + so.objective.abs());
        assert!(d0 <= 1e-6, "seed {seed}: eps=0 {} vs so {}", dro0.objective, so.objective);

        let amb2 = build_ambiguity(seed, &sc, 2.0, &space);
        let dro2 = solve_drcoto(&sc, &amb2, &cfg).unwrap();
        let ro = solve_baseline(BaselineMode::Ro, &sc, &amb2, &cfg).unwrap();
        let d2 = (dro2.objective - ro.objective).abs() / (1.0 + ro.objective.abs());
        assert!(d2 <= 1e-6, "seed {seed}: eps=2 {} vs ro {}", dro2.objective, ro.objective);
        worst = worst.max(d0).max(d2);
    }
    println!(
        "criterion 03 PASS: eps=0 == SO and eps=2 == RO on 5 seeds (worst rel err {worst:.2e})"
    );
}

/// Criterion 4: bound discipline on the default scenario. Per Benders
/// loop the LB trace is nondecreasing, the UB trace nonincreasing, and
/// LB <= UB + 1e-7 at every iteration; the solve completes within 10 min.
#[test]
fn criterion_04_bound_discipline_default_scenario() {
    let started = Instant::now();
    let cfg = SolverConfig::default();
    let sc = generate_scenario(1, &ScenarioOverrides::default());
    assert_eq!((sc.num_gus(), sc.num_uavs(), sc.num_slots()), (15, 3, 15));
    let space = default_sample_space();
    assert_eq!(space.len(), 5);
    let amb = build_ambiguity(1, &sc, defaults::EPSILON, &space);

    let report = solve_drcoto(&sc, &amb, &cfg).unwrap();
    let elapsed = started.elapsed().as_secs_f64();

    assert!(!report.bounds_log.is_empty());
    let mut iters = 0;
    let mut outer = 0usize;
    let (mut prev_ub, mut prev_lb) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in &report.bounds_log {
        if r.outer != outer {
            outer = r.outer;
            prev_ub = f64::INFINITY;
            prev_lb = f64::NEG_INFINITY;
        }
        assert!(r.ub <= prev_ub + 1e-12, "UB rose at outer {} omega {}", r.outer, r.omega);
        assert!(r.lb >= prev_lb - 1e-12, "LB fell at outer {} omega {}", r.outer, r.omega);
        assert!(r.lb <= r.ub + 1e-7, "LB {} above UB {} at outer {} omega {}", r.lb, r.ub, r.outer, r.omega);
        prev_ub = r.ub;
        prev_lb = r.lb;
        iters += 1;
    }
    assert!(elapsed <= 600.0, "criterion 4 budget exceeded: {elapsed:.1} s");
    println!(
        "criterion 04 PASS: bound discipline over {iters} benders iterations, \
         objective {:.4} s, solved in {elapsed:.1} s",
        report.objective
    );
}

/// Criterion 5: objective nondecreasing in the GU count for every method,
/// and SO <= DRCOTO <= RO at every count.
#[test]
fn criterion_05_gu_count_trend_and_ordering() {
    let result = run_sweep(&sweep_config(1), &SolverConfig::default());
    assert!(result.failed_cells.is_empty(), "{:?}", result.failed_cells);
    assert!(result.trend_violations.is_empty(), "{:?}", result.trend_violations);

    // Direct re-assertion from the rows (the sweep also self-checks).
    for method in Method::ALL {
        let mut prev = f64::NEG_INFINITY;
        for &i in &[6usize, 9, 12, 15] {
            let v = result
                .objective_rows
                .iter()
                .find(|r| r.method == method.tag() && r.num_gus == i && r.quota == defaults::UAV_QUOTA && r.eps == defaults::EPSILON)
                .map(|r| r.objective)
                .expect("cell present");
            assert!(v >= prev - 1e-9, "{} not nondecreasing at I={i}", method.tag());
            prev = v;
        }
    }
    for &i in &[6usize, 9, 12, 15] {
        let get = |m: Method| {
            result
                .objective_rows
                .iter()
                .find(|r| r.method == m.tag() && r.num_gus == i && r.quota == defaults::UAV_QUOTA && r.eps == defaults::EPSILON)
                .map(|r| r.objective)
                .unwrap()
        };
        let (so, dro, ro, doo) = (get(Method::So), get(Method::Drcoto), get(Method::Ro), get(Method::Do));
        assert!(so <= dro + 1e-6 * (1.0 + dro.abs()), "I={i}: so {so} above drcoto {dro}");
        assert!(dro <= ro + 1e-6 * (1.0 + ro.abs()), "I={i}: drcoto {dro} above ro {ro}");
        // The deterministic method's rank is reported, not asserted.
        let _ = doo;
    }
    println!("criterion 05 PASS: objectives nondecreasing in I and so <= drcoto <= ro at every I");
}

/// Criterion 6: held-out actual-delay standard deviation of the
/// worst-case solver at most that of the robust and deterministic
/// baselines (stochastic reported).
#[test]
fn criterion_06_actual_delay_std_ordering() {
    let result = run_sweep(&sweep_config(1), &SolverConfig::default());
    let std_of = |m: Method| {
        result
            .actual_rows
            .iter()
            .find(|r| r.method == m.tag())
            .map(|r| r.std)
            .expect("actual row present")
    };
    let (dro, ro, doo, so) =
        (std_of(Method::Drcoto), std_of(Method::Ro), std_of(Method::Do), std_of(Method::So));
    let tol = 1e-9 * (1.0 + dro.abs());
    assert!(dro <= ro + tol, "drcoto std {dro} above ro std {ro}");
    assert!(dro <= doo + tol, "drcoto std {dro} above do std {doo}");
    println!(
        "criterion 06 PASS: actual-delay std drcoto {dro:.4} <= ro {ro:.4}, <= do {doo:.4} \
         (so {so:.4} reported)"
    );
}

/// Criterion 7: worst-case objective nonincreasing in the UAV quota and
/// nondecreasing in the ambiguity radius.
#[test]
fn criterion_07_quota_and_radius_trends() {
    let result = run_sweep(&sweep_config(1), &SolverConfig::default());
    assert!(result.failed_cells.is_empty(), "{:?}", result.failed_cells);
    let max_gus = 15;
    let get = |quota: usize, eps: f64| {
        result
            .objective_rows
            .iter()
            .find(|r| {
                r.method == "drcoto" && r.num_gus == max_gus && r.quota == quota && r.eps == eps
            })
            .map(|r| r.objective)
            .expect("grid cell present")
    };
    for &eps in &[0.1, 0.3, 0.5] {
        let mut prev = f64::INFINITY;
        for &q in &[1usize, 2, 3] {
            let v = get(q, eps);
            assert!(v <= prev + 1e-9, "eps {eps}: objective rose from quota to {q}");
            prev = v;
        }
    }
    for &q in &[1usize, 2, 3] {
        let mut prev = f64::NEG_INFINITY;
        for &eps in &[0.1, 0.3, 0.5] {
            let v = get(q, eps);
            assert!(v >= prev - 1e-9, "quota {q}: objective fell from eps to {eps}");
            prev = v;
        }
    }
    println!("criterion 07 PASS: objective nonincreasing in quota and nondecreasing in radius");
}

/// Criterion 8: analytic linearization gradients match central finite
/// differences (step 1e-3 m) within relative 1e-4 on 50 random points.
#[test]
fn criterion_08_gradient_checks() {
    let cfg = SolverConfig::default();
    let space = default_sample_space();
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut checked = 0usize;
    let mut worst_rel: f64 = 0.0;

    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(6);
    ov.num_uavs = Some(2);
    ov.num_slots = Some(5);
    let mut sc = generate_scenario(21, &ov);
    // Shorten the corridors so random wiggles stay speed-feasible.
    for u in sc.uavs.iter_mut() {
        u.end_position.x = u.start_position.x + 0.45 * (u.end_position.x - u.start_position.x);
    }
    let amb = build_ambiguity(21, &sc, 0.3, &space);
    let dists = &amb.references;
    let step_slack = 0.15 * sc.uavs[0].cruise_speed * sc.time.slot_len;

    while checked < 50 {
        // Random feasible trajectory: wiggle interior waypoints.
        let mut traj = TrajectoryPlan::straight_line(&sc);
        for j in 0..sc.num_uavs() {
            for n in 1..sc.num_slots() {
                let (x, y) = traj.waypoint(j, n);
                traj.set_waypoint(
                    j,
                    n,
                    (
                        x + rng.random_range(-step_slack..step_slack),
                        y + rng.random_range(-step_slack..step_slack),
                    ),
                );
            }
        }
        if !traj.validate(&sc, 1e-9).is_empty() {
            continue;
        }
        // Random decisions with offloading.
        let mut dec = OffloadDecision::all_local(sc.num_gus(), sc.num_uavs(), sc.num_slots());
        for i in 0..sc.num_gus() {
            for n in 1..=sc.num_slots() {
                if rng.random_range(0.0..1.0) < 0.5 {
                    let j = rng.random_range(0..sc.num_uavs());
                    dec.set_offload(i, j, n, rng.random_range(0.0..1.0) < 0.5);
                }
            }
        }
        if dec.validate(&sc).iter().any(|_| true) {
            continue;
        }

        let model = linearize_sp(&traj, &dec, dists, &sc, &space, 10.0, &cfg).unwrap();
        // Check one random free coordinate per point.
        let j = rng.random_range(0..sc.num_uavs());
        let n = rng.random_range(1..sc.num_slots());
        let axis = rng.random_range(0..2usize);
        let var = 2 * (j * (sc.num_slots() - 1) + (n - 1)) + axis;
        let h = 1e-3;
        let f = |xy: (f64, f64)| {
            let mut t = traj.clone();
            t.set_waypoint(j, n, xy);
            expected_total_delay(&sc, &dec, &t, dists, &space, &cfg).unwrap()
        };
        let (x0, y0) = traj.waypoint(j, n);
        let fd = if axis == 0 {
            (f((x0 + h, y0)) - f((x0 - h, y0))) / (2.0 * h)
        } else {
            (f((x0, y0 + h)) - f((x0, y0 - h))) / (2.0 * h)
        };
        let g = model.objective_gradient[var];
        let rel = (g - fd).abs() / fd.abs().max(1e-9);
        worst_rel = worst_rel.max(rel);
        assert!(rel <= 1e-4, "point {checked}: gradient {g} vs fd {fd}");
        checked += 1;
    }
    println!("criterion 08 PASS: 50 gradient checks within rel 1e-4 (worst {worst_rel:.2e})");
}

/// Criterion 9: every solution emitted by any method passes exact
/// re-validation of the trajectory, decision, and expectation constraints
/// at relative 1e-6.
#[test]
fn criterion_09_feasibility_audit() {
    let cfg = SolverConfig::default();
    let space = default_sample_space();
    let mut audited = 0usize;
    for (seed, num_gus, num_slots) in [(1u64, 15usize, 5usize), (2, 9, 6), (3, 6, 4)] {
        let mut ov = ScenarioOverrides::default();
        ov.num_gus = Some(num_gus);
        ov.num_slots = Some(num_slots);
        let sc = generate_scenario(seed, &ov);
        let amb = build_ambiguity(seed, &sc, defaults::EPSILON, &space);
        for method in Method::ALL {
            let report = solve_method(method, &sc, &amb, &cfg).unwrap();
            let v = audit_solution(
                &sc,
                &report.decisions,
                &report.trajectories,
                &report.worst_dists,
                &amb.space,
                &cfg,
                1e-6,
            );
            assert!(v.is_empty(), "{} seed {seed}: {v:?}", method.tag());
            audited += 1;
        }
    }
    println!("criterion 09 PASS: {audited} solutions re-validated exactly");
}

/// Criterion 10: the LP core against vertex enumeration (1e-6, with
/// strong duality) and branch-and-bound against lattice enumeration.
#[test]
fn criterion_10_lp_milp_against_oracles() {
    let started = Instant::now();

    // 100 random LPs, <= 6 vars, <= 8 rows, box bounds.
    let mut lp_checked = 0;
    let mut worst_gap: f64 = 0.0;
    let mut worst_duality: f64 = 0.0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(31_000 + seed);
        let n = rng.random_range(2..=6usize);
        let m = rng.random_range(1..=8usize);
        let sense = if rng.random_range(0.0..1.0) < 0.5 { Sense::Minimize } else { Sense::Maximize };
        let mut p = LpProblem::new(sense, n);
        for j in 0..n {
            p.set_objective(j, rng.random_range(-5.0..5.0));
            let lo = rng.random_range(-2.0..1.0);
            p.set_bounds(j, lo, lo + rng.random_range(0.5..4.0));
        }
        for _ in 0..m {
            let coeffs: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let rel = if rng.random_range(0.0..1.0) < 0.5 { Rel::Le } else { Rel::Ge };
            let rhs = rng.random_range(-4.0..4.0);
            p.add_row(coeffs, rel, rhs);
        }

        let sol = solve_lp(&p).unwrap();
        let oracle = oracles::lp_by_vertex_enumeration(&p);
        match (&sol.status, &oracle) {
            (LpStatus::Optimal, oracles::LpOracle::Optimal { objective }) => {
                let gap = (sol.objective - objective).abs() / (1.0 + objective.abs());
                worst_gap = worst_gap.max(gap);
                assert!(gap <= 1e-6, "seed {seed}: lp {} vs oracle {objective}", sol.objective);
                let resid = oracles::duality_residual(&p, sol.objective, &sol.duals);
                worst_duality = worst_duality.max(resid);
                assert!(resid <= 1e-6, "seed {seed}: duality residual {resid}");
            }
            (LpStatus::Infeasible, oracles::LpOracle::Infeasible) => {}
            (s, o) => panic!("seed {seed}: solver {s:?} vs oracle {o:?}"),
        }
        lp_checked += 1;
    }

    // 50 random pure-binary MILPs, <= 12 binaries.
    let mut milp_checked = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(77_000 + seed);
        let n = rng.random_range(3..=12usize);
        let m = rng.random_range(1..=6usize);
        let sense = if rng.random_range(0.0..1.0) < 0.5 { Sense::Minimize } else { Sense::Maximize };
        let mut base = LpProblem::new(sense, n);
        for j in 0..n {
            base.set_objective(j, rng.random_range(-9.0..9.0));
            base.set_bounds(j, 0.0, 1.0);
        }
        for _ in 0..m {
            let coeffs: Vec<f64> = (0..n).map(|_| rng.random_range(-4.0..4.0)).collect();
            let rel = if rng.random_range(0.0..1.0) < 0.7 { Rel::Le } else { Rel::Ge };
            let rhs = rng.random_range(-3.0..(n as f64));
            base.add_row(coeffs, rel, rhs);
        }
        let problem = MilpProblem { base: base.clone(), binary_mask: vec![true; n] };
        let sol = solve_milp(&problem).unwrap();
        match (sol.status, oracles::milp_by_enumeration(&base)) {
            (MilpStatus::Optimal, Some(best)) => {
                assert!(
                    (sol.objective - best).abs() <= 1e-6 * (1.0 + best.abs()),
                    "seed {seed}: milp {} vs enumeration {best}",
                    sol.objective
                );
            }
            (MilpStatus::Infeasible, None) => {}
            (s, o) => panic!("seed {seed}: milp {s:?} vs enumeration {o:?}"),
        }
        milp_checked += 1;
    }

    let elapsed = started.elapsed().as_secs_f64();
    println!(
        "criterion 10 PASS: {lp_checked} LPs (worst gap {worst_gap:.2e}, worst duality \
         {worst_duality:.2e}) and {milp_checked} MILPs match their oracles ({elapsed:.1} s)"
    );
}
