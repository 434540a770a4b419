//! Method comparison on one scenario: deterministic, stochastic, robust,
//! and the worst-case solver, with held-out actual-delay statistics.
//!
//! Run with: cargo run --release --example baselines

use lanopt::harness::{
    default_sample_space, evaluate_actual, generate_eval_datasets, generate_history,
    generate_scenario, solve_method, Method, ScenarioOverrides,
};
use lanopt::solver::SolverConfig;
use lanopt::uncertainty::{build_reference, AmbiguitySet};

fn main() {
    let seed = 1;
    let mut ov = ScenarioOverrides::default();
    ov.num_slots = Some(8);
    let scenario = generate_scenario(seed, &ov);
    let space = default_sample_space();
    let history = generate_history(seed, &scenario, &space, 200);
    let references: Vec<_> =
        history.samples.iter().map(|s| build_reference(s, &space).unwrap()).collect();
    let amb = AmbiguitySet::new(space.clone(), references, 0.3).unwrap();
    let datasets = generate_eval_datasets(seed, &history.truths, &space, 5);

    let cfg = SolverConfig::default();
    println!("method    optimized s    actual mean s    actual std s");
    for method in Method::ALL {
        let report = solve_method(method, &scenario, &amb, &cfg).expect("solve succeeds");
        let (mean, std) = evaluate_actual(&report, &datasets, &scenario);
        println!(
            "{:<8}  {:>11.4}    {:>13.4}    {:>12.4}",
            method.tag(),
            report.objective,
            mean,
            std
        );
    }
    println!("\noptimized values order so <= drcoto <= ro by ambiguity containment;");
    println!("the deterministic method has no containment guarantee.");
}
