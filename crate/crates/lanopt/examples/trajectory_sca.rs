//! The trajectory subproblem alone: fix offloading decisions and watch the
//! trust-region SCA bend the flight path toward the served ground users.
//!
//! Run with: cargo run --example trajectory_sca

use lanopt::harness::{default_sample_space, generate_history, generate_scenario, ScenarioOverrides};
use lanopt::scenario::{OffloadDecision, TrajectoryPlan};
use lanopt::solver::sp::true_objective;
use lanopt::solver::{solve_sp, SolverConfig};
use lanopt::uncertainty::build_reference;

fn main() {
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(4);
    ov.num_uavs = Some(1);
    ov.num_slots = Some(8);
    let mut scenario = generate_scenario(3, &ov);
    // Put one busy GU north of the straight corridor.
    scenario.gus[0].position = lanopt::Position3D::new(180.0, 420.0, 0.0);

    let space = default_sample_space();
    let history = generate_history(3, &scenario, &space, 100);
    let dists: Vec<_> =
        history.samples.iter().map(|s| build_reference(s, &space).unwrap()).collect();

    // GU 0 offloads in every slot; everyone else stays local.
    let mut dec = OffloadDecision::all_local(4, 1, 8);
    for n in 1..=8 {
        dec.set_offload(0, 0, n, false);
    }

    let cfg = SolverConfig::default();
    let init = TrajectoryPlan::straight_line(&scenario);
    let f0 = true_objective(&dec, &dists, &init, &scenario, &space, &cfg).unwrap();
    let out = solve_sp(&dec, &dists, &init, &scenario, &space, &cfg).unwrap();

    println!("objective: {f0:.4} s -> {:.4} s in {} SCA iterations", out.value, out.sca_iters);
    println!("\n  slot   initial (x, y)          optimized (x, y)");
    for n in 0..=8 {
        let (ax, ay) = init.waypoint(0, n);
        let (bx, by) = out.traj.waypoint(0, n);
        println!("  {n:>4}   ({ax:>6.1}, {ay:>6.1})    ({bx:>6.1}, {by:>6.1})");
    }
    println!("\nGU 0 sits at (180.0, 420.0); the path bows toward it.");
}
