//! Full solve on the default scenario: build the ambiguity set from
//! generated history, run the alternating solver, and print the report.
//!
//! Run with: cargo run --release --example full_solve

use lanopt::harness::{default_sample_space, generate_history, generate_scenario, ScenarioOverrides};
use lanopt::scenario::defaults;
use lanopt::solver::{audit_solution, solve_drcoto, SolverConfig};
use lanopt::uncertainty::{build_reference, AmbiguitySet};

fn main() {
    let seed = 1;
    let scenario = generate_scenario(seed, &ScenarioOverrides::default());
    let space = default_sample_space();
    let history = generate_history(seed, &scenario, &space, defaults::HISTORY_SAMPLES);
    let references = history
        .samples
        .iter()
        .map(|s| build_reference(s, &space).expect("history fits the space"))
        .collect();
    let amb = AmbiguitySet::new(space, references, defaults::EPSILON).expect("valid ambiguity set");

    let cfg = SolverConfig::default();
    let report = solve_drcoto(&scenario, &amb, &cfg).expect("solve succeeds");

    println!("worst-case expected total delay: {:.4} s", report.objective);
    println!(
        "outer iterations: {}   benders iterations: {}   sca iterations: {}",
        report.outer_iters, report.benders_iters, report.sca_iters
    );
    println!(
        "converged: {}   benders gaps closed: {}   wall time: {:.1} s",
        report.converged, report.benders_converged, report.wall_time
    );

    println!("\nbound trace (outer, omega, ub, lb):");
    for r in &report.bounds_log {
        println!("  {:>2}  {:>2}  {:>10.4}  {:>10.4}", r.outer, r.omega, r.ub, r.lb);
    }

    let offloaded: usize = (0..scenario.num_gus())
        .flat_map(|i| (1..=scenario.num_slots()).map(move |n| (i, n)))
        .filter(|&(i, n)| !report.decisions.is_local(i, n))
        .count();
    println!(
        "\noffloaded (GU, slot) pairs: {offloaded} / {}",
        scenario.num_gus() * scenario.num_slots()
    );

    let violations = audit_solution(
        &scenario,
        &report.decisions,
        &report.trajectories,
        &report.worst_dists,
        &amb.space,
        &cfg,
        1e-6,
    );
    println!("audit violations: {}", violations.len());
}
