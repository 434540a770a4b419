//! Decision-linear expectation coefficients shared by the subproblem
//! objective, the master-problem rows, the worst-case LP inputs, and the
//! feasibility audits.
//!
//! For a fixed trajectory every delay/energy term is (per-bit coefficient)
//! x (task size) x (indicator), so expectations over the task-size
//! distribution reduce to multiplying per-bit coefficients by the expected
//! effective size. Keeping one evaluation path here makes the values seen
//! by the different solver layers agree to rounding error.

use crate::physics::UnitCosts;
use crate::scenario::{OffloadDecision, Scenario, TrajectoryPlan};
use crate::solver::{SampleInterpretation, SolveError, SolverConfig};
use crate::uncertainty::{Distribution, SampleSpace};

/// Effective per-slot size of sample k under the configured interpretation.
pub(crate) fn effective_size(space: &SampleSpace, k: usize, sc: &Scenario, cfg: &SolverConfig) -> f64 {
    let s = space.values()[k];
    match cfg.sample_interpretation {
        SampleInterpretation::PerSlot => s,
        SampleInterpretation::TotalOverSlots => s / sc.num_slots() as f64,
    }
}

/// Expected effective size per GU (bits).
pub(crate) fn expected_sizes(
    dists: &[Distribution],
    space: &SampleSpace,
    sc: &Scenario,
    cfg: &SolverConfig,
) -> Vec<f64> {
    dists
        .iter()
        .map(|d| {
            (0..space.len()).map(|k| d.prob(k) * effective_size(space, k, sc, cfg)).sum()
        })
        .collect()
}

/// Expectation-weighted cost coefficients of every route leg at a fixed
/// trajectory and fixed distributions. Index conventions: `i` GU, `j` UAV,
/// `n` slot (1-based externally, 0-based in storage).
pub(crate) struct ExpectedCosts {
    pub num_gus: usize,
    pub num_uavs: usize,
    pub num_slots: usize,
    /// Expected effective size per GU, bits.
    pub sbar: Vec<f64>,
    /// Local compute delay per (i), seconds (slot-independent).
    pub t_local: Vec<f64>,
    /// Uplink delay per (i, j, n).
    pub t_tx: Vec<f64>,
    /// On-board compute delay per (i, j).
    pub t_ucp: Vec<f64>,
    /// Relay delay per (i, j, n).
    pub t_uh: Vec<f64>,
    /// HAP compute delay per (i).
    pub t_hcp: Vec<f64>,
    /// Local compute energy per (i), joules per slot.
    pub e_loc: Vec<f64>,
    /// GU transmit energy per (i, j, n).
    pub e_tx: Vec<f64>,
    /// UAV compute energy per (i, j).
    pub e_ucp: Vec<f64>,
    /// UAV relay energy per (i, j, n).
    pub e_uh: Vec<f64>,
    /// HAP compute energy per (i).
    pub e_hcp: Vec<f64>,
    /// Propulsion energy per (j, n), decision-independent.
    pub flight: Vec<f64>,
}

impl ExpectedCosts {
    pub fn compute(
        sc: &Scenario,
        traj: &TrajectoryPlan,
        dists: &[Distribution],
        space: &SampleSpace,
        cfg: &SolverConfig,
    ) -> Result<Self, SolveError> {
        let unit = UnitCosts::compute(sc, traj)?;
        Ok(Self::from_unit(sc, &unit, dists, space, cfg))
    }

    pub fn from_unit(
        sc: &Scenario,
        unit: &UnitCosts,
        dists: &[Distribution],
        space: &SampleSpace,
        cfg: &SolverConfig,
    ) -> Self {
        let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
        let sbar = expected_sizes(dists, space, sc, cfg);
        let mut t_tx = vec![0.0; ni * nj * nn];
        let mut t_uh = vec![0.0; ni * nj * nn];
        let mut e_tx = vec![0.0; ni * nj * nn];
        let mut e_uh = vec![0.0; ni * nj * nn];
        let mut t_ucp = vec![0.0; ni * nj];
        let mut e_ucp = vec![0.0; ni * nj];
        for i in 0..ni {
            for j in 0..nj {
                t_ucp[i * nj + j] = sbar[i] * UnitCosts::uav_compute_delay_per_bit(sc, i, j);
                e_ucp[i * nj + j] = sbar[i] * UnitCosts::uav_compute_energy_per_bit(sc, i, j);
                for n in 1..=nn {
                    let idx = (i * nj + j) * nn + n - 1;
                    t_tx[idx] = sbar[i] * unit.tx_delay_per_bit(i, j, n);
                    e_tx[idx] = sbar[i] * unit.gu_tx_energy_per_bit(sc, i, j, n);
                    t_uh[idx] = sbar[i] * unit.relay_delay_per_bit(j, n);
                    e_uh[idx] = sbar[i] * unit.uav_relay_energy_per_bit(sc, j, n);
                }
            }
        }
        ExpectedCosts {
            num_gus: ni,
            num_uavs: nj,
            num_slots: nn,
            t_local: (0..ni).map(|i| sbar[i] * UnitCosts::local_delay_per_bit(sc, i)).collect(),
            t_hcp: (0..ni).map(|i| sbar[i] * UnitCosts::hap_compute_delay_per_bit(sc, i)).collect(),
            e_loc: (0..ni).map(|i| sbar[i] * UnitCosts::local_energy_per_bit(sc, i)).collect(),
            e_hcp: (0..ni).map(|i| sbar[i] * UnitCosts::hap_energy_per_bit(sc, i)).collect(),
            flight: unit.flight_energy.clone(),
            sbar,
            t_tx,
            t_ucp,
            t_uh,
            e_tx,
            e_ucp,
            e_uh,
        }
    }

    pub fn idx3(&self, i: usize, j: usize, n: usize) -> usize {
        (i * self.num_uavs + j) * self.num_slots + n - 1
    }

    /// Expected delay of GU i in slot n under the given decisions.
    pub fn expected_slot_delay(&self, dec: &OffloadDecision, i: usize, n: usize) -> f64 {
        let mut d = if dec.is_local(i, n) { self.t_local[i] } else { 0.0 };
        for j in 0..self.num_uavs {
            if dec.x(i, j, n) {
                d += self.t_tx[self.idx3(i, j, n)];
                if dec.y(i, j, n) {
                    d += self.t_ucp[i * self.num_uavs + j];
                }
                if dec.z(i, j, n) {
                    d += self.t_uh[self.idx3(i, j, n)] + self.t_hcp[i];
                }
            }
        }
        d
    }

    /// Objective: expected total delay over all GUs and slots.
    pub fn expected_total_delay(&self, dec: &OffloadDecision) -> f64 {
        let mut total = 0.0;
        for i in 0..self.num_gus {
            for n in 1..=self.num_slots {
                total += self.expected_slot_delay(dec, i, n);
            }
        }
        total
    }

    /// Expected GU energy over the horizon (transmit + local compute).
    pub fn expected_gu_energy(&self, dec: &OffloadDecision, i: usize) -> f64 {
        let mut e = 0.0;
        for n in 1..=self.num_slots {
            if dec.is_local(i, n) {
                e += self.e_loc[i];
            }
            for j in 0..self.num_uavs {
                if dec.x(i, j, n) {
                    e += self.e_tx[self.idx3(i, j, n)];
                }
            }
        }
        e
    }

    /// Expected UAV energy over the horizon (relay + compute + propulsion).
    pub fn expected_uav_energy(&self, dec: &OffloadDecision, j: usize) -> f64 {
        let mut e = 0.0;
        for n in 1..=self.num_slots {
            e += self.flight[j * self.num_slots + n - 1];
            for i in 0..self.num_gus {
                if dec.y(i, j, n) {
                    e += self.e_ucp[i * self.num_uavs + j];
                }
                if dec.z(i, j, n) {
                    e += self.e_uh[self.idx3(i, j, n)];
                }
            }
        }
        e
    }

    /// Expected HAP compute energy over the horizon.
    pub fn expected_hap_energy(&self, dec: &OffloadDecision) -> f64 {
        let mut e = 0.0;
        for i in 0..self.num_gus {
            for j in 0..self.num_uavs {
                for n in 1..=self.num_slots {
                    if dec.z(i, j, n) {
                        e += self.e_hcp[i];
                    }
                }
            }
        }
        e
    }

    /// Total penalty-weighted violation of the expectation constraints,
    /// with exact (non-linearized) values.
    pub fn constraint_violation(&self, dec: &OffloadDecision, sc: &Scenario) -> f64 {
        let mut v = 0.0;
        for i in 0..self.num_gus {
            for n in 1..=self.num_slots {
                v += (self.expected_slot_delay(dec, i, n) - sc.time.slot_len).max(0.0);
            }
            v += (self.expected_gu_energy(dec, i) - sc.gus[i].energy_budget).max(0.0);
        }
        for j in 0..self.num_uavs {
            v += (self.expected_uav_energy(dec, j) - sc.uavs[j].energy_budget).max(0.0);
        }
        v
    }
}

/// Per-bit cost of the route each (GU, slot) part takes under fixed
/// decisions: the bridge to per-sample (per-k) quantities for the
/// worst-case LP and the audits.
pub(crate) struct RouteCoefs {
    /// Per-bit delay of the chosen route per (i, n).
    pub delay_bit: Vec<f64>,
    /// Per-bit GU energy per (i, n).
    pub gu_energy_bit: Vec<f64>,
    /// Per-bit UAV-j energy attributable to GU i, summed over slots: (j, i).
    pub uav_energy_bit: Vec<f64>,
    /// Per-bit HAP energy attributable to GU i, summed over (j, n).
    pub hap_energy_bit: Vec<f64>,
    /// Propulsion energy per (j, n) (size-independent).
    pub flight: Vec<f64>,
}

impl RouteCoefs {
    pub fn compute(
        sc: &Scenario,
        traj: &TrajectoryPlan,
        dec: &OffloadDecision,
    ) -> Result<Self, SolveError> {
        let unit = UnitCosts::compute(sc, traj)?;
        let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
        let mut delay_bit = vec![0.0; ni * nn];
        let mut gu_energy_bit = vec![0.0; ni * nn];
        let mut uav_energy_bit = vec![0.0; nj * ni];
        let mut hap_energy_bit = vec![0.0; ni];
        for i in 0..ni {
            for n in 1..=nn {
                let mut d = if dec.is_local(i, n) { UnitCosts::local_delay_per_bit(sc, i) } else { 0.0 };
                let mut e = if dec.is_local(i, n) { UnitCosts::local_energy_per_bit(sc, i) } else { 0.0 };
                for j in 0..nj {
                    if dec.x(i, j, n) {
                        d += unit.tx_delay_per_bit(i, j, n);
                        e += unit.gu_tx_energy_per_bit(sc, i, j, n);
                        if dec.y(i, j, n) {
                            d += UnitCosts::uav_compute_delay_per_bit(sc, i, j);
                            uav_energy_bit[j * ni + i] +=
                                UnitCosts::uav_compute_energy_per_bit(sc, i, j);
                        }
                        if dec.z(i, j, n) {
                            d += unit.relay_delay_per_bit(j, n)
                                + UnitCosts::hap_compute_delay_per_bit(sc, i);
                            uav_energy_bit[j * ni + i] +=
                                unit.uav_relay_energy_per_bit(sc, j, n);
                            hap_energy_bit[i] += UnitCosts::hap_energy_per_bit(sc, i);
                        }
                    }
                }
                delay_bit[i * nn + n - 1] = d;
                gu_energy_bit[i * nn + n - 1] = e;
            }
        }
        Ok(Self {
            delay_bit,
            gu_energy_bit,
            uav_energy_bit,
            hap_energy_bit,
            flight: unit.flight_energy,
        })
    }
}
