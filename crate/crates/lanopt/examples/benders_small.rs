//! One Benders run at fixed distributions on a small scenario, showing the
//! upper/lower bound trace and the resulting decisions.
//!
//! Run with: cargo run --example benders_small

use lanopt::harness::{default_sample_space, generate_history, generate_scenario, ScenarioOverrides};
use lanopt::solver::{benders::solve_p2, initial_feasible, SolverConfig};
use lanopt::uncertainty::{build_reference, AmbiguitySet};

fn main() {
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(6);
    ov.num_uavs = Some(2);
    ov.num_slots = Some(6);
    let scenario = generate_scenario(2, &ov);

    let space = default_sample_space();
    let history = generate_history(2, &scenario, &space, 200);
    let references: Vec<_> =
        history.samples.iter().map(|s| build_reference(s, &space).unwrap()).collect();
    let amb = AmbiguitySet::new(space, references, 0.3).unwrap();

    let cfg = SolverConfig::default();
    let (dec0, traj0, dists) = initial_feasible(&scenario, &amb).unwrap();
    let p2 = solve_p2(&dists, &scenario, &amb.space, &dec0, &traj0, 1, &cfg).unwrap();

    println!("value: {:.4} s after {} iterations (converged: {})", p2.value, p2.benders_iters, p2.converged);
    println!("\n  omega   upper bound   lower bound   cuts   sca");
    for r in &p2.trace {
        println!(
            "  {:>5}   {:>11.4}   {:>11.4}   {:>4}   {:>3}",
            r.omega, r.ub, r.lb, r.cuts, r.sca_iters
        );
    }

    println!("\noffloading by slot (l = local, u = UAV compute, h = HAP relay):");
    for i in 0..scenario.num_gus() {
        let row: String = (1..=scenario.num_slots())
            .map(|n| {
                if p2.decisions.is_local(i, n) {
                    'l'
                } else if (0..scenario.num_uavs()).any(|j| p2.decisions.y(i, j, n)) {
                    'u'
                } else {
                    'h'
                }
            })
            .collect();
        println!("  GU {i}: {row}");
    }
}
