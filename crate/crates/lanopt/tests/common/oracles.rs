//! Independent oracles for the acceptance suite. Everything here solves
//! the same problems as the library by brute force (vertex enumeration,
//! lattice enumeration, grid search) and must stay independent of the
//! implementation paths it checks.

use lanopt::lp::{LpProblem, Rel, Sense};
use lanopt::scenario::{OffloadDecision, Scenario};

/// Outcome of the brute-force LP oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOracle {
    Optimal { objective: f64 },
    Infeasible,
}

/// Enumerates all basic solutions of an LP whose variables all have finite
/// bounds: every choice of `n` active constraints among rows-as-equalities
/// and variable bounds, solved by Gaussian elimination and filtered for
/// feasibility. Equality rows are always active.
pub fn lp_by_vertex_enumeration(p: &LpProblem) -> LpOracle {
    let n = p.num_vars();
    assert!(
        p.bounds.iter().all(|&(lo, hi)| lo.is_finite() && hi.is_finite()),
        "oracle needs box bounds"
    );

    // Active-candidate pool: (coeffs, rhs). Equality rows come first and
    // are always included.
    let mut eq_rows: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut pool: Vec<(Vec<f64>, f64)> = Vec::new();
    for row in &p.rows {
        match row.rel {
            Rel::Eq => eq_rows.push((row.coeffs.clone(), row.rhs)),
            _ => pool.push((row.coeffs.clone(), row.rhs)),
        }
    }
    for j in 0..n {
        let mut lo = vec![0.0; n];
        lo[j] = 1.0;
        pool.push((lo.clone(), p.bounds[j].0));
        lo[j] = 1.0;
        pool.push((lo, p.bounds[j].1));
    }
    assert!(eq_rows.len() <= n, "too many equality rows for the oracle");
    let need = n - eq_rows.len();

    let feas_tol = 1e-7;
    let mut best: Option<f64> = None;
    let minimize = p.sense == Sense::Minimize;

    let mut combo: Vec<usize> = (0..need).collect();
    loop {
        // Assemble and solve the active system.
        let mut a: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut b: Vec<f64> = Vec::with_capacity(n);
        for (c, r) in &eq_rows {
            a.push(c.clone());
            b.push(*r);
        }
        for &k in &combo {
            a.push(pool[k].0.clone());
            b.push(pool[k].1);
        }
        if let Some(x) = solve_square(&mut a, &mut b) {
            if is_feasible(p, &x, feas_tol) {
                let obj: f64 = x.iter().zip(p.objective.iter()).map(|(x, c)| x * c).sum();
                best = Some(match best {
                    None => obj,
                    Some(b) => {
                        if minimize {
                            b.min(obj)
                        } else {
                            b.max(obj)
                        }
                    }
                });
            }
        }
        // Next combination of `need` indices from the pool.
        if need == 0 {
            break;
        }
        let mut i = need;
        loop {
            if i == 0 {
                return match best {
                    Some(objective) => LpOracle::Optimal { objective },
                    None => LpOracle::Infeasible,
                };
            }
            i -= 1;
            if combo[i] < pool.len() - (need - i) {
                combo[i] += 1;
                for k in i + 1..need {
                    combo[k] = combo[k - 1] + 1;
                }
                break;
            }
        }
    }
    match best {
        Some(objective) => LpOracle::Optimal { objective },
        None => LpOracle::Infeasible,
    }
}

fn solve_square(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        // Partial pivoting.
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-10 {
            return None; // singular active set
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col] / d;
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn is_feasible(p: &LpProblem, x: &[f64], tol: f64) -> bool {
    for (j, &(lo, hi)) in p.bounds.iter().enumerate() {
        if x[j] < lo - tol || x[j] > hi + tol {
            return false;
        }
    }
    for row in &p.rows {
        let lhs: f64 = row.coeffs.iter().zip(x.iter()).map(|(a, v)| a * v).sum();
        let ok = match row.rel {
            Rel::Le => lhs <= row.rhs + tol,
            Rel::Ge => lhs >= row.rhs - tol,
            Rel::Eq => (lhs - row.rhs).abs() <= tol,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Strong-duality check: reconstructs the dual objective from the row
/// multipliers and the reduced-cost bound terms. Returns the relative
/// residual |primal - dual| / (1 + |primal|).
pub fn duality_residual(p: &LpProblem, primal_obj: f64, duals: &[f64]) -> f64 {
    // Work in minimization form.
    let flip = if p.sense == Sense::Maximize { -1.0 } else { 1.0 };
    let n = p.num_vars();
    let mut dual_obj: f64 = duals
        .iter()
        .zip(p.rows.iter())
        .map(|(&y, row)| flip * y * row.rhs)
        .sum();
    for j in 0..n {
        let aty: f64 = p.rows.iter().zip(duals.iter()).map(|(row, &y)| row.coeffs[j] * flip * y).sum();
        let rc = flip * p.objective[j] - aty;
        let (lo, hi) = p.bounds[j];
        let term = if rc > 0.0 { rc * lo } else { rc * hi };
        if term.is_finite() {
            dual_obj += term;
        }
    }
    (flip * primal_obj - dual_obj).abs() / (1.0 + primal_obj.abs())
}

/// Brute-force pure-binary MILP: enumerate the lattice, filter by rows.
pub fn milp_by_enumeration(p: &LpProblem) -> Option<f64> {
    let n = p.num_vars();
    assert!(n <= 20);
    let minimize = p.sense == Sense::Minimize;
    let mut best: Option<f64> = None;
    for mask in 0..(1u32 << n) {
        let x: Vec<f64> = (0..n).map(|j| ((mask >> j) & 1) as f64).collect();
        if !is_feasible(p, &x, 1e-9) {
            continue;
        }
        let obj: f64 = x.iter().zip(p.objective.iter()).map(|(x, c)| x * c).sum();
        best = Some(match best {
            None => obj,
            Some(b) => {
                if minimize {
                    b.min(obj)
                } else {
                    b.max(obj)
                }
            }
        });
    }
    best
}

/// All decision tensors satisfying the collection and quota structure of a
/// tiny scenario (local, or one UAV computing, or one UAV relaying, per
/// (GU, slot)).
pub fn enumerate_decisions(sc: &Scenario) -> Vec<OffloadDecision> {
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

/// Exhaustive product-simplex grid search for the worst-case distribution
/// problem without side rows: step 0.01 per coordinate, L1-ball filter,
/// maximizing the combined expected cost. Only for K = 3 and up to 2 GUs.
pub fn worst_case_by_grid(costs: &[f64], references: &[Vec<f64>], radius: f64) -> f64 {
    let k = 3;
    let num_gus = references.len();
    assert!(num_gus <= 2);
    assert_eq!(costs.len(), num_gus * k);

    // All grid points of the K=3 simplex at step 0.01.
    let mut grid: Vec<[f64; 3]> = Vec::new();
    for a in 0..=100u32 {
        for b in 0..=(100 - a) {
            let c = 100 - a - b;
            grid.push([a as f64 / 100.0, b as f64 / 100.0, c as f64 / 100.0]);
        }
    }
    let in_ball = |p: &[f64; 3], r: &[f64]| -> bool {
        (0..k).map(|i| (p[i] - r[i]).abs()).sum::<f64>() <= radius + 1e-9
    };
    let value = |p: &[f64; 3], cost: &[f64]| -> f64 {
        (0..k).map(|i| p[i] * cost[i]).sum()
    };

    if num_gus == 1 {
        let mut best = f64::NEG_INFINITY;
        for p in &grid {
            if in_ball(p, &references[0]) {
                best = best.max(value(p, &costs[..k]));
            }
        }
        return best;
    }

    // Product of both simplex grids.
    let feasible_a: Vec<&[f64; 3]> =
        grid.iter().filter(|p| in_ball(p, &references[0])).collect();
    let feasible_b: Vec<&[f64; 3]> =
        grid.iter().filter(|p| in_ball(p, &references[1])).collect();
    let mut best = f64::NEG_INFINITY;
    for pa in &feasible_a {
        let va = value(pa, &costs[..k]);
        for pb in &feasible_b {
            let v = va + value(pb, &costs[k..]);
            if v > best {
                best = v;
            }
        }
    }
    best
}
