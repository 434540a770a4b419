//! Branch-and-bound over binary variables on top of the dense LP core.
//!
//! Best-bound node selection with deterministic tie-breaking, branching on
//! the most fractional binary (ties to the lowest index). Nodes are
//! evaluated eagerly: a child's relaxation is solved before it enters the
//! queue, so the queue order reflects true bounds. No cutting planes, no
//! presolve, no heuristics beyond a rounding dive when the node limit is
//! reached without an incumbent.

use crate::lp::{solve_lp, LpError, LpProblem, LpSolution, LpStatus, Sense};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

/// Integrality tolerance: a relaxation value within this of 0/1 counts as
/// integral.
pub const INT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum MilpError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("binary variable {var} has bounds [{lo}, {hi}] outside [0, 1]")]
    BinaryBounds { var: usize, lo: f64, hi: f64 },
    #[error("binary mask length {got} does not match variable count {expected}")]
    MaskShape { got: usize, expected: usize },
    #[error("relaxation is unbounded")]
    Unbounded,
    #[error("LP solver hit its iteration limit at node {0}")]
    IterationLimit(usize),
}

/// A mixed LP with a per-variable binary flag.
#[derive(Debug, Clone)]
pub struct MilpProblem {
    pub base: LpProblem,
    pub binary_mask: Vec<bool>,
}

impl MilpProblem {
    pub fn validate(&self) -> Result<(), MilpError> {
        self.base.validate()?;
        if self.binary_mask.len() != self.base.num_vars() {
            return Err(MilpError::MaskShape {
                got: self.binary_mask.len(),
                expected: self.base.num_vars(),
            });
        }
        for (j, &b) in self.binary_mask.iter().enumerate() {
            if b {
                let (lo, hi) = self.base.bounds[j];
                if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
                    return Err(MilpError::BinaryBounds { var: j, lo, hi });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilpStatus {
    Optimal,
    Infeasible,
}

/// Branch-and-bound result. `bound_trace` records, per explored node, the
/// proven global bound and the incumbent objective at that moment (both in
/// the problem's own sense; for minimization bound <= incumbent).
///
/// `Infeasible` together with `node_limit_hit` means the truncated search
/// found no feasible point: not a proof of infeasibility.
#[derive(Debug, Clone)]
pub struct MilpSolution {
    pub status: MilpStatus,
    pub assignment: Vec<f64>,
    pub objective: f64,
    pub nodes_explored: usize,
    /// True when the node budget ran out; the incumbent is then best-effort
    /// and `bound` reports the proven gap.
    pub node_limit_hit: bool,
    /// Proven bound on the optimum: lower for Min, upper for Max.
    pub bound: f64,
    pub bound_trace: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct MilpOptions {
    pub node_limit: usize,
}

impl Default for MilpOptions {
    fn default() -> Self {
        Self { node_limit: 200_000 }
    }
}

struct Node {
    /// Relaxation bound in minimization space.
    bound: f64,
    seq: usize,
    bounds: Vec<(f64, f64)>,
    primal: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.seq == other.seq
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // BinaryHeap is a max-heap; invert so the smallest bound pops first,
    // breaking ties by insertion order.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .partial_cmp(&self.bound)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

pub fn solve_milp(p: &MilpProblem) -> Result<MilpSolution, MilpError> {
    solve_milp_with(p, &MilpOptions::default())
}

pub fn solve_milp_with(p: &MilpProblem, opts: &MilpOptions) -> Result<MilpSolution, MilpError> {
    p.validate()?;
    let minimize = p.base.sense == Sense::Minimize;
    let to_min = |obj: f64| if minimize { obj } else { -obj };
    let from_min = |obj: f64| if minimize { obj } else { -obj };

    let mut nodes_explored = 0usize;
    let solve_node = |bounds: &[(f64, f64)],
                          nodes_explored: &mut usize|
     -> Result<Option<(f64, LpSolution)>, MilpError> {
        let mut lp = p.base.clone();
        lp.bounds = bounds.to_vec();
        let sol = solve_lp(&lp)?;
        *nodes_explored += 1;
        match sol.status {
            LpStatus::Optimal => Ok(Some((to_min(sol.objective), sol))),
            LpStatus::Infeasible => Ok(None),
            LpStatus::Unbounded => Err(MilpError::Unbounded),
            LpStatus::IterationLimit => Err(MilpError::IterationLimit(*nodes_explored)),
        }
    };

    let mut incumbent: Option<(f64, Vec<f64>)> = None; // (min-space obj, assignment)
    let mut bound_trace: Vec<(f64, f64)> = Vec::new();
    let mut heap: BinaryHeap<Node> = BinaryHeap::new();
    let mut seq = 0usize;
    let mut node_limit_hit = false;

    let fractional = |primal: &[f64]| -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (j, &is_bin) in p.binary_mask.iter().enumerate() {
            if !is_bin {
                continue;
            }
            let v = primal[j];
            let dist = v.min(1.0 - v).max(0.0);
            if dist > INT_TOL && best.map_or(true, |(_, d)| dist > d) {
                best = Some((j, dist));
            }
        }
        best.map(|(j, _)| j)
    };

    // Polishes an integral relaxation into an exact incumbent: binaries are
    // pinned to their rounded values and the continuous part re-solved.
    let polish = |bounds: &[(f64, f64)],
                  primal: &[f64]|
     -> Result<Option<(f64, Vec<f64>)>, MilpError> {
        let mut fixed = bounds.to_vec();
        for (j, &is_bin) in p.binary_mask.iter().enumerate() {
            if is_bin {
                let v = primal[j].round().clamp(0.0, 1.0);
                fixed[j] = (v, v);
            }
        }
        let mut lp = p.base.clone();
        lp.bounds = fixed;
        let sol = solve_lp(&lp)?;
        if sol.status != LpStatus::Optimal {
            // Fall back to the raw relaxation values with snapped binaries.
            let mut snapped = primal.to_vec();
            let mut obj = 0.0;
            for (j, v) in snapped.iter_mut().enumerate() {
                if p.binary_mask[j] {
                    *v = v.round().clamp(0.0, 1.0);
                }
                obj += p.base.objective[j] * *v;
            }
            return Ok(Some((to_min(obj), snapped)));
        }
        let mut assignment = sol.primal;
        for (j, &is_bin) in p.binary_mask.iter().enumerate() {
            if is_bin {
                assignment[j] = assignment[j].round().clamp(0.0, 1.0);
            }
        }
        Ok(Some((to_min(sol.objective), assignment)))
    };

    match solve_node(&p.base.bounds, &mut nodes_explored)? {
        None => {
            return Ok(MilpSolution {
                status: MilpStatus::Infeasible,
                assignment: Vec::new(),
                objective: f64::NAN,
                nodes_explored,
                node_limit_hit: false,
                bound: f64::NAN,
                bound_trace,
            })
        }
        Some((bound, sol)) => {
            heap.push(Node { bound, seq, bounds: p.base.bounds.clone(), primal: sol.primal });
            seq += 1;
        }
    }

    let mut global_bound = f64::NEG_INFINITY;
    while let Some(node) = heap.pop() {
        // Best-bound order makes the popped bound the proven global bound.
        global_bound = global_bound.max(node.bound);
        let inc_obj = incumbent.as_ref().map_or(f64::INFINITY, |(o, _)| *o);
        bound_trace.push((from_min(global_bound.min(inc_obj)), from_min(inc_obj)));

        if node.bound >= inc_obj - 1e-9 {
            continue; // pruned by bound; the heap only gets worse from here
        }

        match fractional(&node.primal) {
            None => {
                if let Some((obj, assignment)) = polish(&node.bounds, &node.primal)? {
                    if obj < inc_obj {
                        incumbent = Some((obj, assignment));
                    }
                }
            }
            Some(branch_var) => {
                for side in 0..2 {
                    let mut child = node.bounds.clone();
                    child[branch_var] = if side == 0 { (0.0, 0.0) } else { (1.0, 1.0) };
                    if let Some((bound, sol)) = solve_node(&child, &mut nodes_explored)? {
                        let inc = incumbent.as_ref().map_or(f64::INFINITY, |(o, _)| *o);
                        if bound < inc - 1e-9 {
                            heap.push(Node { bound, seq, bounds: child, primal: sol.primal });
                            seq += 1;
                        }
                    }
                }
            }
        }

        if nodes_explored >= opts.node_limit {
            node_limit_hit = true;
            break;
        }
    }

    if node_limit_hit && incumbent.is_none() {
        // Rounding dive from the best open node to secure an incumbent;
        // when a rounding makes the node infeasible, the opposite bound is
        // tried before giving up.
        if let Some(node) = heap.pop() {
            let mut bounds = node.bounds.clone();
            let mut primal = node.primal.clone();
            loop {
                match fractional(&primal) {
                    None => {
                        if let Some((obj, assignment)) = polish(&bounds, &primal)? {
                            incumbent = Some((obj, assignment));
                        }
                        break;
                    }
                    Some(j) => {
                        let v = primal[j].round().clamp(0.0, 1.0);
                        bounds[j] = (v, v);
                        match solve_node(&bounds, &mut nodes_explored)? {
                            Some((_, sol)) => primal = sol.primal,
                            None => {
                                bounds[j] = (1.0 - v, 1.0 - v);
                                match solve_node(&bounds, &mut nodes_explored)? {
                                    Some((_, sol)) => primal = sol.primal,
                                    None => break,
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let final_bound = if node_limit_hit {
        let open = heap.peek().map_or(f64::INFINITY, |n| n.bound);
        global_bound.max(f64::NEG_INFINITY).min(open.min(
            incumbent.as_ref().map_or(f64::INFINITY, |(o, _)| *o),
        ))
    } else {
        incumbent.as_ref().map_or(f64::INFINITY, |(o, _)| *o)
    };

    match incumbent {
        Some((obj, assignment)) => Ok(MilpSolution {
            status: MilpStatus::Optimal,
            assignment,
            objective: from_min(obj),
            nodes_explored,
            node_limit_hit,
            bound: from_min(final_bound),
            bound_trace,
        }),
        None => Ok(MilpSolution {
            status: MilpStatus::Infeasible,
            assignment: Vec::new(),
            objective: f64::NAN,
            nodes_explored,
            node_limit_hit,
            bound: f64::NAN,
            bound_trace,
        }),
    }
}
