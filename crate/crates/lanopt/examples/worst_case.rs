//! Ambiguity sets and the adversary's move: build references from history,
//! then watch the worst-case distribution shift mass toward expensive
//! samples as the L1 radius grows.
//!
//! Run with: cargo run --example worst_case

use lanopt::harness::{default_sample_space, generate_history, generate_scenario, ScenarioOverrides};
use lanopt::scenario::bits_to_mbit;
use lanopt::uncertainty::{
    build_reference, l1_distance, worst_case_distribution, AmbiguitySet,
};

fn main() {
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(2);
    let scenario = generate_scenario(11, &ov);
    let space = default_sample_space();
    let history = generate_history(11, &scenario, &space, 200);

    let references: Vec<_> = history
        .samples
        .iter()
        .map(|s| build_reference(s, &space).unwrap())
        .collect();
    println!("sample space (Mbit): {:?}", space.values().iter().map(|&b| bits_to_mbit(b)).collect::<Vec<_>>());
    for (i, r) in references.iter().enumerate() {
        println!("GU {i} reference: {:?}", r.probs().iter().map(|p| (p * 1e4).round() / 1e4).collect::<Vec<_>>());
    }

    // Aggregated delay cost per (GU, sample): proportional to the size.
    let costs: Vec<f64> = (0..2)
        .flat_map(|i| {
            space
                .values()
                .iter()
                .map(move |&s| s * if i == 0 { 8e-7 } else { 1.1e-6 })
                .collect::<Vec<_>>()
        })
        .collect();

    println!("\nworst case vs radius:");
    for eps in [0.0, 0.1, 0.3, 0.5, 1.0, 2.0] {
        let amb = AmbiguitySet::new(space.clone(), references.clone(), eps).unwrap();
        let wc = worst_case_distribution(&costs, &amb, &[]).unwrap();
        let shift: f64 = wc
            .distributions
            .iter()
            .zip(references.iter())
            .map(|(d, r)| l1_distance(d, r).unwrap())
            .sum();
        println!(
            "  eps {eps:>4.2} -> objective {:>8.4} s, total L1 shift {shift:.3}, GU0 worst {:?}",
            wc.objective,
            wc.distributions[0].probs().iter().map(|p| (p * 100.0).round() / 100.0).collect::<Vec<_>>()
        );
    }
}
