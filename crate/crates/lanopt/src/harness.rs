//! Reproducible scenario and history generation, held-out evaluation, and
//! parameter sweeps.
//!
//! Every random quantity is drawn from its own seeded substream keyed by
//! (seed, purpose, entity index), so generated populations nest: the first
//! 6 GUs of a 15-GU scenario are exactly the 6-GU scenario's GUs. Sweep
//! tables therefore vary one thing at a time, and all file output is
//! byte-deterministic for a fixed seed (wall-time columns excepted).

use crate::baselines::{solve_baseline, BaselineMode};
use crate::physics::slot_cost;
use crate::scenario::{
    bits_to_mbit, defaults, mbit_to_bits, GroundUser, Hap, OffloadDecision, Position3D, Scenario,
    TimeGrid, TrajectoryPlan, Uav,
};
use crate::solver::{solve_drcoto, SolveError, SolveReport, SolverConfig};
use crate::uncertainty::{build_reference, AmbiguitySet, Distribution, SampleSpace};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv parse error at line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// Derives an independent substream seed from (seed, purpose, index).
/// SplitMix64 over the combined words; stable across platforms.
pub fn subseed(seed: u64, tag: &str, idx: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(idx.wrapping_add(1));
    for &b in tag.as_bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100_0000_01b3);
    }
    // SplitMix64 finalizer.
    h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = h;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Optional overrides on top of the documented defaults.
#[derive(Debug, Clone, Default)]
pub struct ScenarioOverrides {
    pub num_gus: Option<usize>,
    pub num_uavs: Option<usize>,
    pub num_slots: Option<usize>,
    pub slot_len: Option<f64>,
    pub uav_quota: Option<usize>,
    pub hap_quota: Option<usize>,
    pub area: Option<f64>,
    pub cruise_speed: Option<f64>,
}

/// Deterministic scenario generator. GUs are uniform over the area; UAV
/// starts sit evenly spaced on the west edge with ends due east at the
/// farthest reachable distance (with a 10% slack so optimized trajectories
/// can curve), the HAP hovers over the center.
pub fn generate_scenario(seed: u64, ov: &ScenarioOverrides) -> Scenario {
    let area = ov.area.unwrap_or(defaults::AREA_M);
    let num_gus = ov.num_gus.unwrap_or(defaults::NUM_GUS);
    let num_uavs = ov.num_uavs.unwrap_or(defaults::NUM_UAVS);
    let num_slots = ov.num_slots.unwrap_or(defaults::NUM_SLOTS);
    let slot_len = ov.slot_len.unwrap_or(defaults::SLOT_LEN_S);
    let cruise = ov.cruise_speed.unwrap_or(defaults::CRUISE_SPEED_M_S);

    let (c_lo, c_hi) = defaults::CPU_CYCLES_PER_BIT_RANGE;
    let gus = (0..num_gus)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, "gu", i as u64));
            GroundUser {
                id: i,
                position: Position3D::new(
                    rng.random_range(0.0..area),
                    rng.random_range(0.0..area),
                    0.0,
                ),
                cpu_cycles_per_bit: rng.random_range(c_lo..c_hi),
                local_cpu_rate: defaults::GU_CPU_RATE,
                capacitance: defaults::GU_CAPACITANCE,
                tx_power: crate::scenario::dbm_to_watts(defaults::GU_TX_POWER_DBM),
                energy_budget: defaults::GU_ENERGY_BUDGET_J,
            }
        })
        .collect();

    let reach = 0.9 * cruise * slot_len * num_slots as f64;
    let start_x = 0.0;
    let end_x = (start_x + reach).min(0.98 * area);
    let uavs = (0..num_uavs)
        .map(|j| {
            let y = area * (j as f64 + 0.5) / num_uavs as f64;
            Uav {
                id: j,
                start_position: Position3D::new(start_x, y, defaults::UAV_ALTITUDE_M),
                end_position: Position3D::new(end_x, y, defaults::UAV_ALTITUDE_M),
                cpu_rate: defaults::UAV_CPU_RATE,
                capacitance: defaults::UAV_CAPACITANCE,
                tx_power: crate::scenario::dbm_to_watts(defaults::UAV_TX_POWER_DBM),
                energy_budget: defaults::UAV_ENERGY_BUDGET_J,
                cruise_speed: cruise,
                quota: ov.uav_quota.unwrap_or(defaults::UAV_QUOTA),
            }
        })
        .collect();

    Scenario {
        area_x: area,
        area_y: area,
        gus,
        uavs,
        hap: Hap {
            position: Position3D::new(area / 2.0, area / 2.0, defaults::HAP_ALTITUDE_M),
            cpu_rate: defaults::HAP_CPU_RATE,
            capacitance: defaults::HAP_CAPACITANCE,
            energy_budget: defaults::HAP_ENERGY_BUDGET_J,
            quota: ov.hap_quota.unwrap_or(defaults::HAP_QUOTA),
        },
        channel: defaults::channel(),
        propulsion: defaults::propulsion(),
        time: TimeGrid { num_slots, slot_len },
        min_separation: defaults::MIN_SEPARATION_M,
    }
}

/// The default per-slot task-size sample space.
pub fn default_sample_space() -> SampleSpace {
    SampleSpace::from_values(
        defaults::TASK_SAMPLES_MBIT.iter().map(|&m| mbit_to_bits(m)).collect(),
    )
    .expect("default sample space is valid")
}

/// Historical samples plus the hidden truths they were drawn from.
#[derive(Debug, Clone)]
pub struct History {
    /// Per-GU sample lists (bits), `num_samples` each.
    pub samples: Vec<Vec<f64>>,
    /// The hidden true distribution per GU; used only for evaluation.
    pub truths: Vec<Distribution>,
}

/// Draws each GU's hidden true distribution (a symmetric perturbation of
/// uniform) and `num_samples` i.i.d. history samples jittered within their
/// bins.
pub fn generate_history(
    seed: u64,
    scenario: &Scenario,
    space: &SampleSpace,
    num_samples: usize,
) -> History {
    let k = space.len();
    let mut samples = Vec::with_capacity(scenario.num_gus());
    let mut truths = Vec::with_capacity(scenario.num_gus());
    for i in 0..scenario.num_gus() {
        let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, "hist", i as u64));
        let weights: Vec<f64> = (0..k).map(|_| 1.0 + 0.6 * rng.random_range(-1.0..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let truth = Distribution::new(weights.iter().map(|w| w / total).collect())
            .expect("perturbed uniform is a distribution");

        let mut gu_samples = Vec::with_capacity(num_samples);
        for _ in 0..num_samples {
            let kk = draw_index(&mut rng, truth.probs());
            gu_samples.push(jitter_in_bin(&mut rng, space, kk));
        }
        samples.push(gu_samples);
        truths.push(truth);
    }
    History { samples, truths }
}

fn draw_index(rng: &mut ChaCha8Rng, probs: &[f64]) -> usize {
    let u: f64 = rng.random_range(0.0..1.0);
    let mut acc = 0.0;
    for (k, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    probs.len() - 1
}

/// A raw size near sample k, guaranteed to histogram back into bin k.
fn jitter_in_bin(rng: &mut ChaCha8Rng, space: &SampleSpace, k: usize) -> f64 {
    let v = space.values()[k];
    let edges = space.bin_edges();
    let left = v - edges[k];
    let right = if edges[k + 1].is_finite() { edges[k + 1] - v } else { left };
    let width = left.min(right);
    v + rng.random_range(-0.4..0.4) * width
}

/// Held-out datasets: `count` independent draws of one realized size per GU
/// from the hidden true distributions, on the sample values themselves.
pub fn generate_eval_datasets(
    seed: u64,
    truths: &[Distribution],
    space: &SampleSpace,
    count: usize,
) -> Vec<Vec<f64>> {
    (0..count)
        .map(|d| {
            truths
                .iter()
                .enumerate()
                .map(|(i, truth)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(subseed(
                        seed,
                        "eval",
                        ((d as u64) << 32) | i as u64,
                    ));
                    space.values()[draw_index(&mut rng, truth.probs())]
                })
                .collect()
        })
        .collect()
}

/// Exact total delay of fixed decisions/trajectories under one realized
/// size per GU (constant across slots).
pub fn total_delay_for_sizes(
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    scenario: &Scenario,
    per_gu_bits: &[f64],
) -> f64 {
    let mut total = 0.0;
    for i in 0..scenario.num_gus() {
        for n in 1..=scenario.num_slots() {
            total += slot_cost(i, n, per_gu_bits[i], dec, traj, scenario)
                .expect("feasible solution evaluates")
                .delay;
        }
    }
    total
}

/// Mean and population standard deviation of the exact total delay across
/// held-out datasets, under fixed decisions and trajectories.
pub fn evaluate_actual_raw(
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    scenario: &Scenario,
    datasets: &[Vec<f64>],
) -> (f64, f64) {
    let delays: Vec<f64> =
        datasets.iter().map(|d| total_delay_for_sizes(dec, traj, scenario, d)).collect();
    let mean = delays.iter().sum::<f64>() / delays.len() as f64;
    let var = delays.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / delays.len() as f64;
    (mean, var.sqrt())
}

/// Evaluates a solve's fixed decisions/trajectories on held-out datasets.
pub fn evaluate_actual(
    report: &SolveReport,
    datasets: &[Vec<f64>],
    scenario: &Scenario,
) -> (f64, f64) {
    evaluate_actual_raw(&report.decisions, &report.trajectories, scenario, datasets)
}

/// Builds the ambiguity set from per-GU history samples.
pub fn ambiguity_from_history(
    samples: &[Vec<f64>],
    space: &SampleSpace,
    radius: f64,
) -> Result<AmbiguitySet, crate::uncertainty::UncertaintyError> {
    let references = samples
        .iter()
        .map(|s| build_reference(s, space))
        .collect::<Result<Vec<_>, _>>()?;
    AmbiguitySet::new(space.clone(), references, radius)
}

/// The solver to dispatch one cell to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Do,
    So,
    Drcoto,
    Ro,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Do, Method::So, Method::Drcoto, Method::Ro];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Do => "do",
            Method::So => "so",
            Method::Drcoto => "drcoto",
            Method::Ro => "ro",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "do" => Some(Method::Do),
            "so" => Some(Method::So),
            "drcoto" => Some(Method::Drcoto),
            "ro" => Some(Method::Ro),
            _ => None,
        }
    }
}

/// Runs one method on a scenario/ambiguity pair.
pub fn solve_method(
    method: Method,
    scenario: &Scenario,
    amb: &AmbiguitySet,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    match method {
        Method::Drcoto => solve_drcoto(scenario, amb, cfg),
        Method::Do => solve_baseline(BaselineMode::Do, scenario, amb, cfg),
        Method::So => solve_baseline(BaselineMode::So, scenario, amb, cfg),
        Method::Ro => solve_baseline(BaselineMode::Ro, scenario, amb, cfg),
    }
}

// ---------------------------------------------------------------------------
// Parameter sweeps.
// ---------------------------------------------------------------------------

/// Sweep description; the `sweep` subcommand reads this as JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// GU counts for the method comparison (nested populations).
    pub gu_counts: Vec<usize>,
    /// Ambiguity radii for the radius/quota grid.
    pub eps_values: Vec<f64>,
    /// UAV per-slot quotas for the radius/quota grid.
    pub quota_values: Vec<usize>,
    /// Held-out datasets per cell.
    #[serde(default = "default_eval_datasets")]
    pub eval_datasets: usize,
    pub output_dir: PathBuf,
    /// Slots per scenario; sweeps default to a short horizon for speed.
    #[serde(default = "default_sweep_slots")]
    pub num_slots: usize,
}

fn default_eval_datasets() -> usize {
    5
}

fn default_sweep_slots() -> usize {
    5
}

impl ExperimentConfig {
    pub fn from_json(json: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(json)
            .map_err(|e| HarnessError::Invalid(format!("experiment config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("experiment config serializes")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.gu_counts.is_empty() || self.gu_counts.iter().any(|&c| c == 0) {
            return Err(HarnessError::Invalid("gu_counts must be nonempty positive".into()));
        }
        if self.eps_values.iter().any(|&e| e < 0.0) {
            return Err(HarnessError::Invalid("eps_values must be nonnegative".into()));
        }
        if self.eval_datasets == 0 {
            return Err(HarnessError::Invalid("eval_datasets must be at least 1".into()));
        }
        Ok(())
    }
}

/// One objective.csv row.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub method: String,
    pub num_gus: usize,
    pub eps: f64,
    pub quota: usize,
    pub objective: f64,
    pub wall_time: f64,
}

/// One actual.csv row (held-out evaluation at the largest GU count).
#[derive(Debug, Clone)]
pub struct ActualRow {
    pub method: String,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SweepResult {
    pub objective_rows: Vec<SweepRow>,
    pub actual_rows: Vec<ActualRow>,
    /// Monotonicity/ordering properties that failed to hold, if any.
    pub trend_violations: Vec<String>,
    /// Cells whose solve failed (the sweep continues past them).
    pub failed_cells: Vec<String>,
}

impl SweepResult {
    pub fn objective_csv(&self) -> String {
        let mut out = String::from("method,I,eps,quota,objective,wall_time\n");
        for r in &self.objective_rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.method, r.num_gus, r.eps, r.quota, r.objective, r.wall_time
            ));
        }
        out
    }

    pub fn actual_csv(&self) -> String {
        let mut out = String::from("method,mean,std\n");
        for r in &self.actual_rows {
            out.push_str(&format!("{},{},{}\n", r.method, r.mean, r.std));
        }
        out
    }
}

fn sweep_cell(
    config: &ExperimentConfig,
    method: Method,
    num_gus: usize,
    quota: Option<usize>,
    eps: f64,
    cfg: &SolverConfig,
) -> Result<(Scenario, AmbiguitySet, SolveReport), SolveError> {
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(num_gus);
    ov.num_slots = Some(config.num_slots);
    ov.uav_quota = quota;
    let scenario = generate_scenario(config.seed, &ov);
    let space = default_sample_space();
    let history = generate_history(config.seed, &scenario, &space, defaults::HISTORY_SAMPLES);
    let amb = ambiguity_from_history(&history.samples, &space, eps)
        .map_err(SolveError::Uncertainty)?;
    let report = solve_method(method, &scenario, &amb, cfg)?;
    Ok((scenario, amb, report))
}

/// Runs the full experiment: the method comparison over GU counts, the
/// quota x radius grid, and the held-out evaluation; checks the expected
/// monotonicity properties and returns everything as sorted tables.
/// Solver failures mark their cell and the sweep continues. Cells are
/// independent (each builds its own scenario and history), and the rows
/// are sorted by key before writing, so aggregation order cannot affect
/// the output.
pub fn run_sweep(config: &ExperimentConfig, cfg: &SolverConfig) -> SweepResult {
    let mut result = SweepResult::default();
    let space = default_sample_space();
    let max_gus = config.gu_counts.iter().copied().max().unwrap_or(defaults::NUM_GUS);

    // Method comparison over GU counts at the default radius and quota.
    let mut part1: Vec<(Method, usize, f64)> = Vec::new();
    for &num_gus in &config.gu_counts {
        for method in Method::ALL {
            match sweep_cell(config, method, num_gus, None, defaults::EPSILON, cfg) {
                Ok((scenario, _amb, report)) => {
                    result.objective_rows.push(SweepRow {
                        method: method.tag().to_string(),
                        num_gus,
                        eps: defaults::EPSILON,
                        quota: defaults::UAV_QUOTA,
                        objective: report.objective,
                        wall_time: report.wall_time,
                    });
                    part1.push((method, num_gus, report.objective));
                    if num_gus == max_gus {
                        let history =
                            generate_history(config.seed, &scenario, &space, defaults::HISTORY_SAMPLES);
                        let datasets = generate_eval_datasets(
                            config.seed,
                            &history.truths,
                            &space,
                            config.eval_datasets,
                        );
                        let (mean, std) = evaluate_actual(&report, &datasets, &scenario);
                        result.actual_rows.push(ActualRow {
                            method: method.tag().to_string(),
                            mean,
                            std,
                        });
                    }
                }
                Err(e) => {
                    result
                        .failed_cells
                        .push(format!("method {} I {num_gus}: {e}", method.tag()));
                }
            }
        }
    }

    // Quota x radius grid for the robust method.
    let mut part2: Vec<(usize, f64, f64)> = Vec::new();
    for &quota in &config.quota_values {
        for &eps in &config.eps_values {
            match sweep_cell(config, Method::Drcoto, max_gus, Some(quota), eps, cfg) {
                Ok((_, _, report)) => {
                    result.objective_rows.push(SweepRow {
                        method: Method::Drcoto.tag().to_string(),
                        num_gus: max_gus,
                        eps,
                        quota,
                        objective: report.objective,
                        wall_time: report.wall_time,
                    });
                    part2.push((quota, eps, report.objective));
                }
                Err(e) => {
                    result.failed_cells.push(format!("drcoto quota {quota} eps {eps}: {e}"));
                }
            }
        }
    }

    // Trend checks. Objective tolerances allow solver-level noise well
    // below the effects the trends describe.
    let tol = |v: f64| 1e-6 * (1.0 + v.abs());
    for method in Method::ALL {
        let mut series: Vec<(usize, f64)> = part1
            .iter()
            .filter(|(m, _, _)| *m == method)
            .map(|&(_, i, v)| (i, v))
            .collect();
        series.sort_by_key(|&(i, _)| i);
        for w in series.windows(2) {
            if w[1].1 < w[0].1 - tol(w[0].1) {
                result.trend_violations.push(format!(
                    "{}: objective decreases from I={} ({:.4}) to I={} ({:.4})",
                    method.tag(),
                    w[0].0,
                    w[0].1,
                    w[1].0,
                    w[1].1
                ));
            }
        }
    }
    for &num_gus in &config.gu_counts {
        let value = |m: Method| {
            part1.iter().find(|&&(mm, i, _)| mm == m && i == num_gus).map(|&(_, _, v)| v)
        };
        if let (Some(so), Some(dro), Some(ro)) =
            (value(Method::So), value(Method::Drcoto), value(Method::Ro))
        {
            if so > dro + tol(dro) {
                result
                    .trend_violations
                    .push(format!("I={num_gus}: so {so:.4} above drcoto {dro:.4}"));
            }
            if dro > ro + tol(ro) {
                result
                    .trend_violations
                    .push(format!("I={num_gus}: drcoto {dro:.4} above ro {ro:.4}"));
            }
        }
    }
    for &eps in &config.eps_values {
        let mut series: Vec<(usize, f64)> = part2
            .iter()
            .filter(|&&(_, e, _)| e == eps)
            .map(|&(q, _, v)| (q, v))
            .collect();
        series.sort_by_key(|&(q, _)| q);
        for w in series.windows(2) {
            if w[1].1 > w[0].1 + tol(w[0].1) {
                result.trend_violations.push(format!(
                    "eps={eps}: objective increases from quota {} ({:.4}) to {} ({:.4})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
    }
    for &quota in &config.quota_values {
        let mut series: Vec<(f64, f64)> = part2
            .iter()
            .filter(|&&(q, _, _)| q == quota)
            .map(|&(_, e, v)| (e, v))
            .collect();
        series.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in series.windows(2) {
            if w[1].1 < w[0].1 - tol(w[0].1) {
                result.trend_violations.push(format!(
                    "quota={quota}: objective decreases from eps {} ({:.4}) to {} ({:.4})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
    }

    // Deterministic output order.
    result.objective_rows.sort_by(|a, b| {
        a.method
            .cmp(&b.method)
            .then(a.num_gus.cmp(&b.num_gus))
            .then(a.eps.partial_cmp(&b.eps).unwrap())
            .then(a.quota.cmp(&b.quota))
    });
    result.actual_rows.sort_by(|a, b| a.method.cmp(&b.method));
    result
}

// ---------------------------------------------------------------------------
// CSV formats.
// ---------------------------------------------------------------------------

/// History file: one column per GU, one row per sample, sizes in Mbit.
pub fn history_to_csv(history: &History) -> String {
    let num_gus = history.samples.len();
    let q = history.samples.first().map_or(0, Vec::len);
    let mut out = String::new();
    out.push_str(
        &(0..num_gus).map(|i| format!("gu{i}")).collect::<Vec<_>>().join(","),
    );
    out.push('\n');
    for row in 0..q {
        let line: Vec<String> =
            (0..num_gus).map(|i| format!("{}", bits_to_mbit(history.samples[i][row]))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses a history CSV (sizes in Mbit) back into per-GU bit samples.
pub fn history_from_csv(text: &str) -> Result<Vec<Vec<f64>>, HarnessError> {
    let mut lines = text.lines().enumerate().peekable();
    // Optional header: skip if the first cell is not numeric.
    if let Some((_, first)) = lines.peek() {
        let cell = first.split(',').next().unwrap_or("");
        if cell.trim().parse::<f64>().is_err() {
            lines.next();
        }
    }
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if columns.is_empty() {
            columns = vec![Vec::new(); cells.len()];
        } else if cells.len() != columns.len() {
            return Err(HarnessError::Csv {
                line: lineno + 1,
                message: format!("expected {} cells, got {}", columns.len(), cells.len()),
            });
        }
        for (i, cell) in cells.iter().enumerate() {
            let mbit: f64 = cell.trim().parse().map_err(|e| HarnessError::Csv {
                line: lineno + 1,
                message: format!("bad number {cell:?}: {e}"),
            })?;
            columns[i].push(mbit_to_bits(mbit));
        }
    }
    if columns.is_empty() {
        return Err(HarnessError::Invalid("history csv has no data rows".into()));
    }
    Ok(columns)
}

/// Datasets file: one row per dataset, one column per GU, sizes in Mbit.
pub fn datasets_to_csv(datasets: &[Vec<f64>]) -> String {
    let num_gus = datasets.first().map_or(0, Vec::len);
    let mut out = String::new();
    out.push_str(
        &(0..num_gus).map(|i| format!("gu{i}")).collect::<Vec<_>>().join(","),
    );
    out.push('\n');
    for row in datasets {
        let line: Vec<String> = row.iter().map(|&b| format!("{}", bits_to_mbit(b))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses a datasets CSV (rows = datasets, columns = GUs, Mbit -> bits).
pub fn datasets_from_csv(text: &str) -> Result<Vec<Vec<f64>>, HarnessError> {
    let columns = history_from_csv(text)?;
    // history_from_csv returns column-major; transpose back to rows.
    let rows = columns.first().map_or(0, Vec::len);
    Ok((0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect())
}
