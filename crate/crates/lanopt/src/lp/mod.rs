//! Self-contained dense linear programming: a bounded-variable two-phase
//! primal simplex returning primal values, dual multipliers, and status.
//!
//! Built for desk-scale instances (hundreds to a few thousand variables),
//! deterministic by construction: Dantzig pricing with fixed tie-breaking,
//! switching to Bland's rule after a stall. Duals follow the shadow-price
//! convention `dual[i] = d(optimum)/d(rhs[i])`, so for a minimization
//! problem `<=` rows have nonpositive duals and `>=` rows nonnegative ones
//! (flipped for maximization); equality rows are unrestricted.

mod simplex;

use thiserror::Error;

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Row relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

impl Rel {
    fn symbol(self) -> &'static str {
        match self {
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
        }
    }
}

/// One linear constraint row.
#[derive(Debug, Clone)]
pub struct LpRow {
    pub coeffs: Vec<f64>,
    pub rel: Rel,
    pub rhs: f64,
}

/// A linear program over bounded variables. Defaults: objective 0,
/// bounds `[0, +inf)`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub rows: Vec<LpRow>,
    /// Per-variable `[lower, upper]`; infinities allowed on either side.
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("row {row} has {got} coefficients, expected {expected}")]
    RowShape { row: usize, got: usize, expected: usize },
    #[error("variable {var} has lower bound {lo} above upper bound {hi}")]
    BoundOrder { var: usize, lo: f64, hi: f64 },
    #[error("non-finite coefficient in {0}")]
    NonFinite(String),
}

impl LpProblem {
    pub fn new(sense: Sense, num_vars: usize) -> Self {
        Self {
            sense,
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn set_objective(&mut self, var: usize, coeff: f64) {
        self.objective[var] = coeff;
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) {
        self.bounds[var] = (lo, hi);
    }

    /// Adds a dense row; returns its index.
    pub fn add_row(&mut self, coeffs: Vec<f64>, rel: Rel, rhs: f64) -> usize {
        self.rows.push(LpRow { coeffs, rel, rhs });
        self.rows.len() - 1
    }

    /// Adds a row given only its nonzero entries; returns its index.
    pub fn add_row_sparse(&mut self, entries: &[(usize, f64)], rel: Rel, rhs: f64) -> usize {
        let mut coeffs = vec![0.0; self.num_vars()];
        for &(j, c) in entries {
            coeffs[j] += c;
        }
        self.add_row(coeffs, rel, rhs)
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite("objective".into()));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(LpError::RowShape { row: r, got: row.coeffs.len(), expected: n });
            }
            if row.coeffs.iter().any(|c| !c.is_finite()) || !row.rhs.is_finite() {
                return Err(LpError::NonFinite(format!("row {r}")));
            }
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo > hi {
                return Err(LpError::BoundOrder { var: j, lo, hi });
            }
            if lo.is_nan() || hi.is_nan() {
                return Err(LpError::NonFinite(format!("bounds of variable {j}")));
            }
        }
        Ok(())
    }

    /// Plain-text tabular dump for offline inspection.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let sense = match self.sense {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        };
        writeln!(out, "{sense} {} vars, {} rows", self.num_vars(), self.num_rows()).unwrap();
        write!(out, "obj:").unwrap();
        for (j, c) in self.objective.iter().enumerate() {
            if *c != 0.0 {
                write!(out, " {c:+.6}*x{j}").unwrap();
            }
        }
        writeln!(out).unwrap();
        for (r, row) in self.rows.iter().enumerate() {
            write!(out, "r{r}:").unwrap();
            for (j, c) in row.coeffs.iter().enumerate() {
                if *c != 0.0 {
                    write!(out, " {c:+.6}*x{j}").unwrap();
                }
            }
            writeln!(out, " {} {:.6}", row.rel.symbol(), row.rhs).unwrap();
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if (lo, hi) != (0.0, f64::INFINITY) {
                writeln!(out, "x{j} in [{lo}, {hi}]").unwrap();
            }
        }
        out
    }
}

/// Solve outcome classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The pivot budget ran out; signals numerical trouble, never silent.
    IterationLimit,
}

/// Result of [`solve_lp`]. On a non-`Optimal` status the vectors are empty
/// and the objective is NaN.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    /// One multiplier per constraint row (shadow-price convention).
    pub duals: Vec<f64>,
    pub objective: f64,
}

/// Feasibility tolerance used by the solver and its callers.
pub const FEAS_TOL: f64 = 1e-7;
/// Pivot magnitude tolerance.
pub const PIVOT_TOL: f64 = 1e-9;

/// Solves a dense LP. Deterministic: identical input yields the identical
/// solution, including tie-breaking.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.validate()?;
    Ok(simplex::solve(p))
}
