//! Task-size ambiguity sets and the inner worst-case-distribution problem.
//!
//! Each GU's task size lives on a shared discrete sample space; its
//! reference distribution is the normalized histogram of historical samples
//! and the ambiguity set is the L1 ball of a given radius around it. The
//! adversary's move, maximizing expected delay over the product of balls
//! subject to the expectation constraints, is one joint LP, because the
//! platform-level energy rows couple the GUs.

use crate::lp::{solve_lp, LpError, LpProblem, LpStatus, Rel, Sense};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UncertaintyError {
    #[error("sample space needs at least one value, strictly increasing")]
    BadSampleSpace,
    #[error("bin edges must be strictly increasing and bracket the values")]
    BadBinEdges,
    #[error("sample {0} lies outside the binned range")]
    OutOfRangeSample(f64),
    #[error("no samples given")]
    NoSamples,
    #[error("probabilities must be nonnegative and sum to 1 (got sum {0})")]
    NotADistribution(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ambiguity radius must be nonnegative, got {0}")]
    NegativeRadius(f64),
    #[error("worst-case LP is infeasible: the side constraints exclude the whole ball")]
    Infeasible,
    #[error("worst-case LP failed with status {0:?}")]
    LpFailed(LpStatus),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// Ordered discrete sample space of per-slot task sizes (bits) with the
/// half-open histogram bins `[edge_k, edge_{k+1})` around each value.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpace {
    values: Vec<f64>,
    bin_edges: Vec<f64>,
}

impl SampleSpace {
    /// Builds the space with default bin edges: midpoints between
    /// consecutive values, outer edges at 0 and +inf.
    pub fn from_values(values: Vec<f64>) -> Result<Self, UncertaintyError> {
        if values.is_empty() || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(UncertaintyError::BadSampleSpace);
        }
        if values[0] <= 0.0 || values.iter().any(|v| !v.is_finite()) {
            return Err(UncertaintyError::BadSampleSpace);
        }
        let mut edges = Vec::with_capacity(values.len() + 1);
        edges.push(0.0);
        for w in values.windows(2) {
            edges.push(0.5 * (w[0] + w[1]));
        }
        edges.push(f64::INFINITY);
        Ok(Self { values, bin_edges: edges })
    }

    pub fn with_edges(values: Vec<f64>, bin_edges: Vec<f64>) -> Result<Self, UncertaintyError> {
        if values.is_empty() || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(UncertaintyError::BadSampleSpace);
        }
        if bin_edges.len() != values.len() + 1 || bin_edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(UncertaintyError::BadBinEdges);
        }
        for (k, &v) in values.iter().enumerate() {
            if !(bin_edges[k] <= v && v < bin_edges[k + 1]) {
                return Err(UncertaintyError::BadBinEdges);
            }
        }
        Ok(Self { values, bin_edges })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    /// Bin index of a raw size, or `None` when it falls outside the range.
    pub fn bin_of(&self, size: f64) -> Option<usize> {
        if size < self.bin_edges[0] || size >= self.bin_edges[self.len()] {
            return None;
        }
        // Linear scan; K is small.
        (0..self.len()).find(|&k| self.bin_edges[k] <= size && size < self.bin_edges[k + 1])
    }
}

/// A probability distribution over the sample space.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, UncertaintyError> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| !(0.0..=1.0 + 1e-9).contains(&p)) || (sum - 1.0).abs() > 1e-9 {
            return Err(UncertaintyError::NotADistribution(sum));
        }
        Ok(Self { probs })
    }

    pub fn uniform(k: usize) -> Self {
        Self { probs: vec![1.0 / k as f64; k] }
    }

    pub fn unit_mass(k: usize, at: usize) -> Self {
        let mut probs = vec![0.0; k];
        probs[at] = 1.0;
        Self { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.probs[k]
    }

    /// Expectation of per-sample costs under this distribution.
    pub fn expectation(&self, costs: &[f64]) -> f64 {
        self.probs.iter().zip(costs.iter()).map(|(p, c)| p * c).sum()
    }

    /// Mean task size under the space's values.
    pub fn mean(&self, space: &SampleSpace) -> f64 {
        self.expectation(space.values())
    }
}

/// L1 distance between two distributions over the same space.
pub fn l1_distance(p: &Distribution, q: &Distribution) -> Result<f64, UncertaintyError> {
    if p.len() != q.len() {
        return Err(UncertaintyError::DimensionMismatch(p.len(), q.len()));
    }
    Ok(p.probs.iter().zip(q.probs.iter()).map(|(a, b)| (a - b).abs()).sum())
}

/// Normalized histogram of historical samples over the space's bins.
pub fn build_reference(
    samples: &[f64],
    space: &SampleSpace,
) -> Result<Distribution, UncertaintyError> {
    if samples.is_empty() {
        return Err(UncertaintyError::NoSamples);
    }
    let mut counts = vec![0usize; space.len()];
    for &s in samples {
        match space.bin_of(s) {
            Some(k) => counts[k] += 1,
            None => return Err(UncertaintyError::OutOfRangeSample(s)),
        }
    }
    let q = samples.len() as f64;
    Ok(Distribution { probs: counts.into_iter().map(|c| c as f64 / q).collect() })
}

/// The product of per-GU L1 balls around the reference distributions.
#[derive(Debug, Clone)]
pub struct AmbiguitySet {
    pub space: SampleSpace,
    pub references: Vec<Distribution>,
    pub radius: f64,
}

impl AmbiguitySet {
    pub fn new(
        space: SampleSpace,
        references: Vec<Distribution>,
        radius: f64,
    ) -> Result<Self, UncertaintyError> {
        if radius < 0.0 || !radius.is_finite() {
            return Err(UncertaintyError::NegativeRadius(radius));
        }
        for r in &references {
            if r.len() != space.len() {
                return Err(UncertaintyError::DimensionMismatch(r.len(), space.len()));
            }
        }
        Ok(Self { space, references, radius })
    }

    pub fn num_gus(&self) -> usize {
        self.references.len()
    }

    /// Replaces the radius, keeping space and references.
    pub fn with_radius(&self, radius: f64) -> Result<Self, UncertaintyError> {
        Self::new(self.space.clone(), self.references.clone(), radius)
    }
}

/// One linear expectation constraint `sum_{i,k} coeffs[i*K+k] p_{i,k} <= rhs`.
#[derive(Debug, Clone)]
pub struct ExpectationRow {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

/// Output of the worst-case-distribution LP.
#[derive(Debug, Clone)]
pub struct WorstCase {
    pub distributions: Vec<Distribution>,
    pub objective: f64,
}

/// Maximizes `sum_{i,k} p_{i,k} cost_{i,k}` over the product of per-GU L1
/// balls, subject to the simplex constraints and the given expectation
/// rows. One joint LP; deterministic tie-breaking comes from the simplex
/// pivoting rule, so degenerate optima are reproducible.
///
/// `costs` is I x K row-major (aggregate delay coefficients per GU/sample).
pub fn worst_case_distribution(
    costs: &[f64],
    amb: &AmbiguitySet,
    side: &[ExpectationRow],
) -> Result<WorstCase, UncertaintyError> {
    let num_gus = amb.num_gus();
    let k = amb.space.len();
    if costs.len() != num_gus * k {
        return Err(UncertaintyError::DimensionMismatch(costs.len(), num_gus * k));
    }
    for row in side {
        if row.coeffs.len() != num_gus * k {
            return Err(UncertaintyError::DimensionMismatch(row.coeffs.len(), num_gus * k));
        }
    }

    // Variables: p_{i,k} then deviation magnitudes u_{i,k}.
    let np = num_gus * k;
    let mut lp = LpProblem::new(Sense::Maximize, 2 * np);
    for ik in 0..np {
        lp.set_objective(ik, costs[ik]);
        lp.set_bounds(ik, 0.0, 1.0);
        lp.set_bounds(np + ik, 0.0, 2.0);
    }
    for i in 0..num_gus {
        let simplex: Vec<(usize, f64)> = (0..k).map(|kk| (i * k + kk, 1.0)).collect();
        lp.add_row_sparse(&simplex, Rel::Eq, 1.0);
        let p0 = &amb.references[i];
        for kk in 0..k {
            let ik = i * k + kk;
            // u >= p - p0  and  u >= p0 - p.
            lp.add_row_sparse(&[(ik, 1.0), (np + ik, -1.0)], Rel::Le, p0.prob(kk));
            lp.add_row_sparse(&[(ik, -1.0), (np + ik, -1.0)], Rel::Le, -p0.prob(kk));
        }
        let ball: Vec<(usize, f64)> = (0..k).map(|kk| (np + i * k + kk, 1.0)).collect();
        lp.add_row_sparse(&ball, Rel::Le, amb.radius);
    }
    for row in side {
        let entries: Vec<(usize, f64)> =
            row.coeffs.iter().enumerate().filter(|(_, &c)| c != 0.0).map(|(j, &c)| (j, c)).collect();
        lp.add_row_sparse(&entries, Rel::Le, row.rhs);
    }

    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(UncertaintyError::Infeasible),
        other => return Err(UncertaintyError::LpFailed(other)),
    }

    // Snap solver crumbs and renormalize each GU's simplex exactly, then
    // recompute the objective from the snapped probabilities so the value
    // and the returned distributions agree.
    let mut distributions = Vec::with_capacity(num_gus);
    let mut objective = 0.0;
    for i in 0..num_gus {
        let mut probs: Vec<f64> = (0..k)
            .map(|kk| {
                let v = sol.primal[i * k + kk];
                if v.abs() < 1e-9 {
                    0.0
                } else if (v - 1.0).abs() < 1e-9 {
                    1.0
                } else {
                    v
                }
            })
            .collect();
        let sum: f64 = probs.iter().sum();
        if sum > 0.0 && (sum - 1.0).abs() > 0.0 {
            for p in probs.iter_mut() {
                *p /= sum;
            }
        }
        for kk in 0..k {
            objective += probs[kk] * costs[i * k + kk];
        }
        distributions
            .push(Distribution::new(probs).expect("snapped LP output is a distribution"));
    }

    Ok(WorstCase { distributions, objective })
}
