//! Branch-and-bound over binaries: a knapsack with a fractional relaxation
//! and the bound trace it produces.
//!
//! Run with: cargo run --example branch_and_bound

use lanopt::lp::{LpProblem, Rel, Sense};
use lanopt::milp::{solve_milp, MilpProblem};

fn main() {
    let values = [9.0, 7.0, 6.0, 5.0, 4.0, 3.0];
    let weights = [5.0, 4.0, 4.0, 3.0, 2.0, 2.0];
    let capacity = 10.0;

    let mut base = LpProblem::new(Sense::Maximize, 6);
    for (j, v) in values.iter().enumerate() {
        base.set_objective(j, *v);
        base.set_bounds(j, 0.0, 1.0);
    }
    base.add_row(weights.to_vec(), Rel::Le, capacity);
    let problem = MilpProblem { base, binary_mask: vec![true; 6] };

    let sol = solve_milp(&problem).expect("well-formed MILP");
    println!("status: {:?}", sol.status);
    println!("objective: {:.1}", sol.objective);
    println!("assignment: {:?}", sol.assignment);
    println!("nodes explored: {}", sol.nodes_explored);
    println!("proven bound: {:.4}", sol.bound);

    println!("\nbound trace (global bound, incumbent):");
    for (b, inc) in &sol.bound_trace {
        println!("  {b:>8.4}  {inc:>8.4}");
    }
}
