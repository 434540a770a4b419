//! The dense LP core: build a small problem, solve it, read primal values
//! and shadow prices, and show the plain-text debug dump.
//!
//! Run with: cargo run --example simplex_lp

use lanopt::lp::{solve_lp, LpProblem, Rel, Sense};

fn main() {
    // A small production-planning LP:
    //   max 3 a + 2 b + 4 c
    //   s.t. a + b + 2 c <= 10   (machine hours)
    //        2 a + b     <= 8    (raw material)
    //        c           >= 1    (contract floor)
    //   0 <= a, b, c <= 6.
    let mut p = LpProblem::new(Sense::Maximize, 3);
    p.set_objective(0, 3.0);
    p.set_objective(1, 2.0);
    p.set_objective(2, 4.0);
    for j in 0..3 {
        p.set_bounds(j, 0.0, 6.0);
    }
    p.add_row(vec![1.0, 1.0, 2.0], Rel::Le, 10.0);
    p.add_row(vec![2.0, 1.0, 0.0], Rel::Le, 8.0);
    p.add_row(vec![0.0, 0.0, 1.0], Rel::Ge, 1.0);

    println!("{}", p.dump());
    let s = solve_lp(&p).expect("well-formed LP");
    println!("status: {:?}", s.status);
    println!("objective: {:.4}", s.objective);
    println!("primal: {:?}", s.primal);
    println!("duals (shadow prices per row): {:?}", s.duals);

    // Shadow-price check: one more machine hour is worth duals[0].
    let mut relaxed = p.clone();
    relaxed.rows[0].rhs += 1.0;
    let s2 = solve_lp(&relaxed).unwrap();
    println!(
        "\nrhs[0] + 1 moves the objective by {:.4} (dual says {:.4})",
        s2.objective - s.objective,
        s.duals[0]
    );
}
