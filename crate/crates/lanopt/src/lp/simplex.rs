//! Bounded-variable two-phase primal simplex on a dense tableau.
//!
//! Internal form: every input row gets a slack with +1 coefficient whose
//! bounds encode the relation (`<=` -> [0, inf), `>=` -> (-inf, 0],
//! `=` -> [0, 0]), so the constraint matrix always contains an identity
//! block and duals can be read off the slack reduced costs. Rows whose
//! slack cannot absorb the initial residual receive a phase-1 artificial.
//! Nonbasic variables rest at a bound (or at 0 when free); the ratio test
//! handles bound flips.

use super::{LpProblem, LpSolution, LpStatus, Rel, Sense, FEAS_TOL, PIVOT_TOL};

const STALL_LIMIT: usize = 100;
const REFRESH_EVERY: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
    /// Free variable resting at zero.
    FreeZero,
}

struct Tableau {
    m: usize,
    /// Total columns: structural + slacks + artificials.
    n_total: usize,
    /// Dense `B^{-1} A`, row-major, m x n_total.
    a: Vec<f64>,
    /// `B^{-1} b`.
    rhs: Vec<f64>,
    /// Reduced costs `c_j - c_B B^{-1} A_j` for the current phase.
    redcost: Vec<f64>,
    cost: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    vals: Vec<f64>,
    state: Vec<VarState>,
    basis: Vec<usize>,
    pivots: usize,
    bland: bool,
    stall: usize,
    best_obj: f64,
    scratch: Vec<f64>,
}

impl Tableau {
    fn entry(&self, r: usize, j: usize) -> f64 {
        self.a[r * self.n_total + j]
    }

    fn phase_objective(&self) -> f64 {
        (0..self.n_total).map(|j| self.cost[j] * self.vals[j]).sum()
    }

    fn rebuild_reduced_costs(&mut self) {
        self.redcost.copy_from_slice(&self.cost);
        for r in 0..self.m {
            let cb = self.cost[self.basis[r]];
            if cb != 0.0 {
                let row = &self.a[r * self.n_total..(r + 1) * self.n_total];
                for (j, &v) in row.iter().enumerate() {
                    self.redcost[j] -= cb * v;
                }
            }
        }
    }

    /// Recomputes basic values from `B^{-1} b` and the nonbasic values,
    /// clearing incremental drift.
    fn refresh_basic_values(&mut self) {
        let mut xb = self.rhs.clone();
        for j in 0..self.n_total {
            if matches!(self.state[j], VarState::Basic(_)) {
                continue;
            }
            let vj = self.vals[j];
            if vj != 0.0 {
                for r in 0..self.m {
                    let e = self.entry(r, j);
                    if e != 0.0 {
                        xb[r] -= e * vj;
                    }
                }
            }
        }
        for r in 0..self.m {
            self.vals[self.basis[r]] = xb[r];
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let nt = self.n_total;
        let piv = self.entry(r, e);
        let inv = 1.0 / piv;
        self.scratch.copy_from_slice(&self.a[r * nt..(r + 1) * nt]);
        for v in self.scratch.iter_mut() {
            *v *= inv;
        }
        let rhs_r = self.rhs[r] * inv;

        for rr in 0..self.m {
            if rr == r {
                continue;
            }
            let factor = self.entry(rr, e);
            if factor != 0.0 {
                let row = &mut self.a[rr * nt..(rr + 1) * nt];
                for (x, &s) in row.iter_mut().zip(self.scratch.iter()) {
                    *x -= factor * s;
                }
                row[e] = 0.0;
                self.rhs[rr] -= factor * rhs_r;
            }
        }
        let factor = self.redcost[e];
        if factor != 0.0 {
            for (x, &s) in self.redcost.iter_mut().zip(self.scratch.iter()) {
                *x -= factor * s;
            }
            self.redcost[e] = 0.0;
        }
        self.a[r * nt..(r + 1) * nt].copy_from_slice(&self.scratch);
        self.rhs[r] = rhs_r;
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// One simplex iteration. `Ok(true)` when the phase is optimal,
    /// `Err(())` when an unbounded improving ray exists.
    fn step(&mut self) -> Result<bool, ()> {
        // Entering variable: Dantzig (most improving), or lowest improving
        // index once Bland's rule is engaged.
        let mut entering: Option<(usize, f64, f64)> = None; // (var, dir, score)
        for j in 0..self.n_total {
            let (dir, score) = match self.state[j] {
                VarState::Basic(_) => continue,
                VarState::AtLower => {
                    if self.lo[j] == self.hi[j] {
                        continue; // pinned
                    }
                    (1.0f64, self.redcost[j])
                }
                VarState::AtUpper => (-1.0, -self.redcost[j]),
                VarState::FreeZero => {
                    if self.redcost[j] > 0.0 {
                        (-1.0, -self.redcost[j])
                    } else {
                        (1.0, self.redcost[j])
                    }
                }
            };
            if score < -PIVOT_TOL {
                match entering {
                    Some((_, _, s)) if score >= s => {}
                    _ => entering = Some((j, dir, score)),
                }
                if self.bland {
                    break;
                }
            }
        }
        let Some((e, dir, _)) = entering else {
            return Ok(true);
        };

        // Ratio test with bound flips. Ties within 1e-12 break towards the
        // largest pivot magnitude (stability), then the lowest basis index;
        // under Bland's rule, strictly the lowest basis index.
        let own_range = self.hi[e] - self.lo[e];
        let mut t_best = own_range;
        let mut leave: Option<(usize, bool)> = None; // (row, hits_upper)
        let mut leave_piv = 0.0;
        for r in 0..self.m {
            let a = dir * self.entry(r, e);
            let b = self.basis[r];
            let (lim, hits_upper) = if a > PIVOT_TOL {
                (self.lo[b], false)
            } else if a < -PIVOT_TOL {
                (self.hi[b], true)
            } else {
                continue;
            };
            if !lim.is_finite() {
                continue;
            }
            let t = ((self.vals[b] - lim) / a).max(0.0);
            let tie = (t - t_best).abs() <= 1e-12 * (1.0 + t_best.abs());
            let improves = t < t_best && !tie;
            let wins_tie = tie
                && match leave {
                    None => true,
                    Some((cr, _)) => {
                        if self.bland {
                            self.basis[r] < self.basis[cr]
                        } else {
                            let piv = a.abs();
                            piv > leave_piv * (1.0 + 1e-12)
                                || ((piv - leave_piv).abs() <= 1e-12 * leave_piv.max(1.0)
                                    && self.basis[r] < self.basis[cr])
                        }
                    }
                };
            if improves || wins_tie {
                t_best = t.min(t_best);
                leave = Some((r, hits_upper));
                leave_piv = a.abs();
            }
        }

        if t_best.is_infinite() {
            return Err(());
        }
        let t = t_best.max(0.0);

        match leave {
            None => {
                // Bound flip: the entering variable runs to its other bound.
                for r in 0..self.m {
                    let a = self.entry(r, e);
                    if a != 0.0 {
                        self.vals[self.basis[r]] -= t * dir * a;
                    }
                }
                if dir > 0.0 {
                    self.vals[e] = self.hi[e];
                    self.state[e] = VarState::AtUpper;
                } else {
                    self.vals[e] = self.lo[e];
                    self.state[e] = VarState::AtLower;
                }
            }
            Some((r, hits_upper)) => {
                for rr in 0..self.m {
                    let a = self.entry(rr, e);
                    if a != 0.0 {
                        self.vals[self.basis[rr]] -= t * dir * a;
                    }
                }
                let leaving = self.basis[r];
                self.vals[e] += t * dir;
                self.vals[leaving] = if hits_upper { self.hi[leaving] } else { self.lo[leaving] };
                self.state[leaving] =
                    if hits_upper { VarState::AtUpper } else { VarState::AtLower };
                self.state[e] = VarState::Basic(r);
                self.pivot(r, e);
            }
        }

        let obj = self.phase_objective();
        if obj < self.best_obj - 1e-12 * (1.0 + self.best_obj.abs()) {
            self.best_obj = obj;
            self.stall = 0;
        } else {
            self.stall += 1;
            if self.stall > STALL_LIMIT {
                self.bland = true;
            }
        }
        if self.pivots > 0 && self.pivots % REFRESH_EVERY == 0 {
            self.refresh_basic_values();
        }
        Ok(false)
    }

    fn run(&mut self, iter_limit: usize) -> LpStatus {
        self.best_obj = f64::INFINITY;
        self.stall = 0;
        let mut iters = 0;
        loop {
            match self.step() {
                Ok(true) => return LpStatus::Optimal,
                Ok(false) => {}
                Err(()) => return LpStatus::Unbounded,
            }
            iters += 1;
            if iters > iter_limit {
                return LpStatus::IterationLimit;
            }
        }
    }
}

pub(super) fn solve(p: &LpProblem) -> LpSolution {
    let n = p.num_vars();
    let m = p.num_rows();
    let negate = p.sense == Sense::Maximize;

    let struct_cost: Vec<f64> =
        p.objective.iter().map(|&c| if negate { -c } else { c }).collect();

    // Columns: structural, then one slack per row, then artificials.
    let n_slack = m;
    let mut lo = Vec::with_capacity(n + n_slack);
    let mut hi = Vec::with_capacity(n + n_slack);
    for &(l, h) in &p.bounds {
        lo.push(l);
        hi.push(h);
    }
    for row in &p.rows {
        match row.rel {
            Rel::Le => {
                lo.push(0.0);
                hi.push(f64::INFINITY);
            }
            Rel::Ge => {
                lo.push(f64::NEG_INFINITY);
                hi.push(0.0);
            }
            Rel::Eq => {
                lo.push(0.0);
                hi.push(0.0);
            }
        }
    }

    let mut vals = vec![0.0; n + n_slack];
    let mut state = vec![VarState::FreeZero; n + n_slack];
    for j in 0..n {
        if lo[j].is_finite() {
            vals[j] = lo[j];
            state[j] = VarState::AtLower;
        } else if hi[j].is_finite() {
            vals[j] = hi[j];
            state[j] = VarState::AtUpper;
        }
    }

    let mut residual = vec![0.0; m];
    for (r, row) in p.rows.iter().enumerate() {
        let dot: f64 =
            row.coeffs.iter().zip(vals[..n].iter()).map(|(a, v)| a * v).sum();
        residual[r] = row.rhs - dot;
    }

    let mut artificials: Vec<(usize, f64)> = Vec::new(); // (row, sign)
    let mut basis = vec![usize::MAX; m];
    for r in 0..m {
        let s = n + r;
        if residual[r] >= lo[s] && residual[r] <= hi[s] {
            vals[s] = residual[r];
            state[s] = VarState::Basic(r);
            basis[r] = s;
            continue;
        }
        // Clamp the slack to its nearest bound; an artificial of matching
        // sign covers the remainder.
        let clamped = residual[r].clamp(lo[s], hi[s]);
        vals[s] = clamped;
        state[s] = if hi[s].is_finite() && clamped == hi[s] && lo[s] != hi[s] {
            VarState::AtUpper
        } else {
            VarState::AtLower
        };
        let rem = residual[r] - clamped;
        let sign = if rem >= 0.0 { 1.0 } else { -1.0 };
        artificials.push((r, sign));
        basis[r] = n + n_slack + artificials.len() - 1;
    }

    let n_art = artificials.len();
    let n_total = n + n_slack + n_art;

    let mut a = vec![0.0; m * n_total];
    for (r, row) in p.rows.iter().enumerate() {
        a[r * n_total..r * n_total + n].copy_from_slice(&row.coeffs);
        a[r * n_total + n + r] = 1.0;
    }
    let mut row_sign = vec![1.0; m];
    for (k, &(r, sign)) in artificials.iter().enumerate() {
        a[r * n_total + n + n_slack + k] = sign;
        lo.push(0.0);
        hi.push(f64::INFINITY);
        vals.push((residual[r] - vals[n + r]) / sign);
        state.push(VarState::Basic(r));
        if sign < 0.0 {
            // Negate the row so the basic artificial's column is +e_r.
            for v in a[r * n_total..(r + 1) * n_total].iter_mut() {
                *v = -*v;
            }
            row_sign[r] = -1.0;
        }
    }
    let rhs: Vec<f64> = (0..m).map(|r| p.rows[r].rhs * row_sign[r]).collect();

    let mut tab = Tableau {
        m,
        n_total,
        a,
        rhs,
        redcost: vec![0.0; n_total],
        cost: vec![0.0; n_total],
        lo,
        hi,
        vals,
        state,
        basis,
        pivots: 0,
        bland: false,
        stall: 0,
        best_obj: f64::INFINITY,
        scratch: vec![0.0; n_total],
    };

    let iter_limit = 50 * (m + n_total) + 10_000;

    if n_art > 0 {
        for k in 0..n_art {
            tab.cost[n + n_slack + k] = 1.0;
        }
        tab.rebuild_reduced_costs();
        let st = tab.run(iter_limit);
        if st == LpStatus::IterationLimit {
            return failed(LpStatus::IterationLimit);
        }
        tab.refresh_basic_values();
        let infeas: f64 = (0..n_art).map(|k| tab.vals[n + n_slack + k].max(0.0)).sum();
        if infeas > FEAS_TOL {
            return failed(LpStatus::Infeasible);
        }
        // Drive basic artificials out where a usable pivot exists; pin all
        // artificials to zero either way.
        for k in 0..n_art {
            let av = n + n_slack + k;
            if let VarState::Basic(r) = tab.state[av] {
                let mut best: Option<(usize, f64)> = None;
                for j in 0..n + n_slack {
                    if matches!(tab.state[j], VarState::Basic(_)) || tab.lo[j] == tab.hi[j] {
                        continue;
                    }
                    let piv = tab.entry(r, j).abs();
                    if piv > 1e-7 && best.map_or(true, |(_, bp)| piv > bp) {
                        best = Some((j, piv));
                    }
                }
                if let Some((j, _)) = best {
                    // Degenerate exchange: the artificial sits at zero.
                    tab.state[j] = VarState::Basic(r);
                    tab.state[av] = VarState::AtLower;
                    tab.vals[av] = 0.0;
                    tab.pivot(r, j);
                }
            }
            tab.lo[av] = 0.0;
            tab.hi[av] = 0.0;
            tab.cost[av] = 0.0;
            if !matches!(tab.state[av], VarState::Basic(_)) {
                tab.state[av] = VarState::AtLower;
                tab.vals[av] = 0.0;
            }
        }
        tab.refresh_basic_values();
    }

    for j in 0..n {
        tab.cost[j] = struct_cost[j];
    }
    for j in n..n_total {
        tab.cost[j] = 0.0;
    }
    tab.bland = false;
    tab.rebuild_reduced_costs();
    match tab.run(iter_limit) {
        LpStatus::Optimal => {}
        other => return failed(other),
    }

    tab.refresh_basic_values();
    tab.rebuild_reduced_costs();

    let primal: Vec<f64> = tab.vals[..n].to_vec();
    let objective: f64 = primal.iter().zip(p.objective.iter()).map(|(x, c)| x * c).sum();
    // Shadow prices: dual[i] = -redcost(slack_i); the row-negation signs
    // cancel (see derivation in the module tests). Flip for maximization.
    let duals: Vec<f64> = (0..m)
        .map(|r| {
            let y = -tab.redcost[n + r];
            if negate {
                -y
            } else {
                y
            }
        })
        .collect();

    LpSolution { status: LpStatus::Optimal, primal, duals, objective }
}

fn failed(status: LpStatus) -> LpSolution {
    LpSolution { status, primal: Vec::new(), duals: Vec::new(), objective: f64::NAN }
}
