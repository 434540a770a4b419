//! Domain entities, static parameters, and scenario validation.
//!
//! Everything here is immutable after construction and safe to share across
//! concurrent solves. All numeric fields are strict SI internally (bits,
//! watts, hertz, meters, seconds, joules); config-level units (Mbit, dBm,
//! dB, km) are converted exactly once at load time by [`ScenarioConfig`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point in the 3D Cartesian frame, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3D {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// 3D Euclidean distance to another point.
    pub fn distance(&self, other: &Position3D) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Horizontal (xy-plane) distance to another point.
    pub fn horizontal_distance(&self, other: &Position3D) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// A ground user with one computation task per time slot.
#[derive(Debug, Clone)]
pub struct GroundUser {
    pub id: usize,
    /// Ground position; `z` must be 0.
    pub position: Position3D,
    /// CPU cycles required per task bit.
    pub cpu_cycles_per_bit: f64,
    /// Local CPU rate, cycles/s.
    pub local_cpu_rate: f64,
    /// Effective switched capacitance of the local CPU.
    pub capacitance: f64,
    /// Uplink transmit power, watts.
    pub tx_power: f64,
    /// Energy budget over the horizon, joules.
    pub energy_budget: f64,
}

/// A rotary-wing UAV cruising at fixed altitude between fixed endpoints.
#[derive(Debug, Clone)]
pub struct Uav {
    pub id: usize,
    pub start_position: Position3D,
    pub end_position: Position3D,
    /// Onboard CPU rate, cycles/s.
    pub cpu_rate: f64,
    pub capacitance: f64,
    /// Relay transmit power towards the HAP, watts.
    pub tx_power: f64,
    pub energy_budget: f64,
    /// Constant cruise speed, m/s.
    pub cruise_speed: f64,
    /// Max GUs whose tasks this UAV may compute per slot.
    pub quota: usize,
}

impl Uav {
    /// Fixed flight altitude (shared by start and end positions).
    pub fn altitude(&self) -> f64 {
        self.start_position.z
    }
}

/// The stationary high-altitude platform.
#[derive(Debug, Clone)]
pub struct Hap {
    pub position: Position3D,
    pub cpu_rate: f64,
    pub capacitance: f64,
    pub energy_budget: f64,
    /// Max tasks relayed to the HAP per slot, across all UAVs.
    pub quota: usize,
}

/// Channel model parameters for both the GU-UAV and UAV-HAP links.
#[derive(Debug, Clone)]
pub struct ChannelParams {
    /// Environment parameter `a` of the probabilistic LoS model (dimensionless).
    pub los_a: f64,
    /// Environment parameter `b` of the probabilistic LoS model, 1/degree.
    pub los_b: f64,
    /// Reference channel gain at 1 m (linear).
    pub beta0: f64,
    /// Path-loss exponent.
    pub pathloss_exp: f64,
    /// NLoS attenuation factor, in (0, 1].
    pub nlos_atten: f64,
    /// GU-UAV channel bandwidth, Hz.
    pub bandwidth_gu: f64,
    /// Receiver noise power, watts.
    pub noise_power: f64,
    /// Average co-channel interference from other GUs, watts.
    pub interference: f64,
    /// UAV-HAP channel bandwidth, Hz.
    pub bandwidth_uh: f64,
    /// UAV-HAP antenna gain (linear).
    pub antenna_gain: f64,
    /// Total implementation loss on the UAV-HAP link (linear, <= 1).
    pub total_loss: f64,
    /// Boltzmann constant, J/K.
    pub boltzmann: f64,
    /// System noise temperature of the HAP receiver, K.
    pub noise_temp: f64,
    /// UAV-HAP carrier frequency, Hz.
    pub carrier_freq: f64,
    /// Speed of light, m/s.
    pub light_speed: f64,
}

/// Which induced-power term the rotary-wing propulsion model uses. The
/// two forms differ in the quartic denominator inside the square root and
/// agree in hover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InducedPowerModel {
    /// `P2 * (sqrt(1 + v^4 / (4 v0^2)) - v^2 / (2 v0^2))^(1/2)`.
    #[default]
    V0Squared,
    /// Conventional rotary-wing form,
    /// `P2 * (sqrt(1 + v^4 / (4 v0^4)) - v^2 / (2 v0^2))^(1/2)`.
    V0Fourth,
}

/// Rotary-wing propulsion power model parameters.
#[derive(Debug, Clone)]
pub struct PropulsionParams {
    /// Blade profile power in hover, watts (P1).
    pub blade_power: f64,
    /// Induced power in hover, watts (P2).
    pub induced_power: f64,
    /// Rotor blade tip speed, m/s.
    pub tip_speed: f64,
    /// Fuselage drag ratio.
    pub drag_ratio: f64,
    /// Air density, kg/m^3.
    pub air_density: f64,
    /// Rotor solidity.
    pub rotor_solidity: f64,
    /// Rotor disc area, m^2.
    pub rotor_area: f64,
    /// Mean rotor induced velocity in hover, m/s.
    pub mean_rotor_velocity: f64,
    /// Induced-power term variant; `V0Squared` unless configured otherwise.
    pub induced_power_model: InducedPowerModel,
}

/// Discretization of the horizon into equal slots.
#[derive(Debug, Clone, Copy)]
pub struct TimeGrid {
    pub num_slots: usize,
    /// Slot duration, seconds.
    pub slot_len: f64,
}

/// Immutable description of the whole setting: entities, parameters, grid.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// Operation area east-west extent, meters.
    pub area_x: f64,
    /// Operation area north-south extent, meters.
    pub area_y: f64,
    pub gus: Vec<GroundUser>,
    pub uavs: Vec<Uav>,
    pub hap: Hap,
    pub channel: ChannelParams,
    pub propulsion: PropulsionParams,
    pub time: TimeGrid,
    /// Minimum inter-UAV separation, meters.
    pub min_separation: f64,
}

impl Scenario {
    pub fn num_gus(&self) -> usize {
        self.gus.len()
    }

    pub fn num_uavs(&self) -> usize {
        self.uavs.len()
    }

    pub fn num_slots(&self) -> usize {
        self.time.num_slots
    }
}

/// Checks every static invariant and returns one message per violation.
/// An empty list means the scenario is consistent. Pure: same input, same
/// output; violations are data, not faults.
pub fn validate_scenario(s: &Scenario) -> Vec<String> {
    let mut v = Vec::new();

    if !(s.area_x > 0.0 && s.area_x.is_finite()) || !(s.area_y > 0.0 && s.area_y.is_finite()) {
        v.push(format!("area {} x {} m must be positive and finite", s.area_x, s.area_y));
    }
    if !(s.min_separation >= 0.0 && s.min_separation.is_finite()) {
        v.push(format!("min separation {} m must be nonnegative", s.min_separation));
    }
    if s.time.num_slots < 1 {
        v.push("time grid needs at least one slot".to_string());
    }
    if !(s.time.slot_len > 0.0 && s.time.slot_len.is_finite()) {
        v.push(format!("slot length {} s must be positive", s.time.slot_len));
    }

    let inside = |p: &Position3D| {
        p.x >= 0.0 && p.x <= s.area_x && p.y >= 0.0 && p.y <= s.area_y && p.is_finite()
    };

    for (i, gu) in s.gus.iter().enumerate() {
        if gu.position.z != 0.0 {
            v.push(format!("GU {i} altitude {} m must be 0", gu.position.z));
        }
        if !inside(&gu.position) {
            v.push(format!(
                "GU {i} outside area [0, {}] x [0, {}]: position ({}, {})",
                s.area_x, s.area_y, gu.position.x, gu.position.y
            ));
        }
        for (name, val) in [
            ("cpu_cycles_per_bit", gu.cpu_cycles_per_bit),
            ("local_cpu_rate", gu.local_cpu_rate),
            ("capacitance", gu.capacitance),
            ("tx_power", gu.tx_power),
            ("energy_budget", gu.energy_budget),
        ] {
            if !(val > 0.0 && val.is_finite()) {
                v.push(format!("GU {i} {name} = {val} must be positive and finite"));
            }
        }
    }

    for (j, uav) in s.uavs.iter().enumerate() {
        if !inside(&uav.start_position) || !inside(&uav.end_position) {
            v.push(format!("UAV {j} start/end position outside area"));
        }
        if uav.start_position.z != uav.end_position.z {
            v.push(format!(
                "UAV {j} start altitude {} m differs from end altitude {} m",
                uav.start_position.z, uav.end_position.z
            ));
        }
        if !(uav.start_position.z > 0.0) {
            v.push(format!("UAV {j} altitude {} m must be positive", uav.start_position.z));
        }
        if !(uav.cruise_speed > 0.0 && uav.cruise_speed.is_finite()) {
            v.push(format!("UAV {j} cruise speed {} must be positive", uav.cruise_speed));
        }
        for (name, val) in [
            ("cpu_rate", uav.cpu_rate),
            ("capacitance", uav.capacitance),
            ("tx_power", uav.tx_power),
            ("energy_budget", uav.energy_budget),
        ] {
            if !(val > 0.0 && val.is_finite()) {
                v.push(format!("UAV {j} {name} = {val} must be positive and finite"));
            }
        }
        // Straight start-to-end flight must fit within the horizon, or no
        // trajectory plan can connect the fixed endpoints.
        let reach = uav.cruise_speed * s.time.slot_len * s.time.num_slots as f64;
        let dist = uav.start_position.distance(&uav.end_position);
        if dist > reach * (1.0 + 1e-9) {
            v.push(format!(
                "UAV {j} endpoints {dist:.1} m apart exceed max flight distance {reach:.1} m"
            ));
        }
    }

    for j in 0..s.uavs.len() {
        for jp in (j + 1)..s.uavs.len() {
            let d = s.uavs[j].start_position.distance(&s.uavs[jp].start_position);
            if d < s.min_separation {
                v.push(format!(
                    "UAV {j} and UAV {jp} initial separation {d:.3} m below minimum {} m",
                    s.min_separation
                ));
            }
        }
    }

    if !(s.hap.position.z > 0.0 && s.hap.position.is_finite()) {
        v.push(format!("HAP altitude {} m must be positive", s.hap.position.z));
    }
    for (name, val) in [
        ("cpu_rate", s.hap.cpu_rate),
        ("capacitance", s.hap.capacitance),
        ("energy_budget", s.hap.energy_budget),
    ] {
        if !(val > 0.0 && val.is_finite()) {
            v.push(format!("HAP {name} = {val} must be positive and finite"));
        }
    }

    let ch = &s.channel;
    for (name, val) in [
        ("bandwidth_gu", ch.bandwidth_gu),
        ("bandwidth_uh", ch.bandwidth_uh),
        ("noise_power", ch.noise_power),
        ("carrier_freq", ch.carrier_freq),
        ("beta0", ch.beta0),
        ("light_speed", ch.light_speed),
        ("noise_temp", ch.noise_temp),
        ("boltzmann", ch.boltzmann),
        ("antenna_gain", ch.antenna_gain),
        ("total_loss", ch.total_loss),
        ("pathloss_exp", ch.pathloss_exp),
    ] {
        if !(val > 0.0 && val.is_finite()) {
            v.push(format!("channel {name} = {val} must be positive and finite"));
        }
    }
    if !(ch.nlos_atten > 0.0 && ch.nlos_atten <= 1.0) {
        v.push(format!("channel nlos_atten = {} must be in (0, 1]", ch.nlos_atten));
    }
    if !(ch.interference >= 0.0 && ch.interference.is_finite()) {
        v.push(format!("channel interference = {} must be nonnegative", ch.interference));
    }

    let pp = &s.propulsion;
    for (name, val) in [
        ("blade_power", pp.blade_power),
        ("induced_power", pp.induced_power),
        ("tip_speed", pp.tip_speed),
        ("drag_ratio", pp.drag_ratio),
        ("air_density", pp.air_density),
        ("rotor_solidity", pp.rotor_solidity),
        ("rotor_area", pp.rotor_area),
        ("mean_rotor_velocity", pp.mean_rotor_velocity),
    ] {
        if !(val > 0.0 && val.is_finite()) {
            v.push(format!("propulsion {name} = {val} must be positive and finite"));
        }
    }

    v
}

/// Binary offloading decisions over (GU, UAV, slot).
///
/// `x[i,j,n]` = 1 when GU i's slot-n task part is collected by UAV j;
/// `y` marks on-board computation and `z` relay to the HAP, with
/// `y + z = x` elementwise (data flow balance on the UAV).
#[derive(Debug, Clone, PartialEq)]
pub struct OffloadDecision {
    num_gus: usize,
    num_uavs: usize,
    num_slots: usize,
    x: Vec<bool>,
    y: Vec<bool>,
    z: Vec<bool>,
}

impl OffloadDecision {
    /// All-zero tensors: every task part is computed locally.
    pub fn all_local(num_gus: usize, num_uavs: usize, num_slots: usize) -> Self {
        let len = num_gus * num_uavs * num_slots;
        Self {
            num_gus,
            num_uavs,
            num_slots,
            x: vec![false; len],
            y: vec![false; len],
            z: vec![false; len],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.num_gus, self.num_uavs, self.num_slots)
    }

    fn idx(&self, i: usize, j: usize, n: usize) -> usize {
        debug_assert!(i < self.num_gus && j < self.num_uavs && (1..=self.num_slots).contains(&n));
        (i * self.num_uavs + j) * self.num_slots + (n - 1)
    }

    pub fn x(&self, i: usize, j: usize, n: usize) -> bool {
        self.x[self.idx(i, j, n)]
    }

    pub fn y(&self, i: usize, j: usize, n: usize) -> bool {
        self.y[self.idx(i, j, n)]
    }

    pub fn z(&self, i: usize, j: usize, n: usize) -> bool {
        self.z[self.idx(i, j, n)]
    }

    /// True when GU i's slot-n part stays local (no UAV collects it).
    pub fn is_local(&self, i: usize, n: usize) -> bool {
        (0..self.num_uavs).all(|j| !self.x(i, j, n))
    }

    /// Marks GU i's slot-n part as collected by UAV j; `relay` selects HAP
    /// relay over on-board computation.
    pub fn set_offload(&mut self, i: usize, j: usize, n: usize, relay: bool) {
        let k = self.idx(i, j, n);
        self.x[k] = true;
        self.y[k] = !relay;
        self.z[k] = relay;
    }

    /// Clears any assignment of GU i's slot-n part (back to local).
    pub fn clear(&mut self, i: usize, n: usize) {
        for j in 0..self.num_uavs {
            let k = self.idx(i, j, n);
            self.x[k] = false;
            self.y[k] = false;
            self.z[k] = false;
        }
    }

    /// Checks the decision invariants against a scenario's quotas; returns
    /// one message per violation.
    pub fn validate(&self, s: &Scenario) -> Vec<String> {
        let mut v = Vec::new();
        if (self.num_gus, self.num_uavs, self.num_slots)
            != (s.num_gus(), s.num_uavs(), s.num_slots())
        {
            v.push("decision dimensions do not match scenario".to_string());
            return v;
        }
        for i in 0..self.num_gus {
            for n in 1..=self.num_slots {
                let collected: usize = (0..self.num_uavs).filter(|&j| self.x(i, j, n)).count();
                if collected > 1 {
                    v.push(format!("GU {i} slot {n}: collected by {collected} UAVs"));
                }
                for j in 0..self.num_uavs {
                    let (x, y, z) = (self.x(i, j, n), self.y(i, j, n), self.z(i, j, n));
                    if (y as u8) + (z as u8) != x as u8 {
                        v.push(format!("GU {i} UAV {j} slot {n}: y + z != x"));
                    }
                }
            }
        }
        for (j, uav) in s.uavs.iter().enumerate() {
            for n in 1..=self.num_slots {
                let served: usize = (0..self.num_gus).filter(|&i| self.y(i, j, n)).count();
                if served > uav.quota {
                    v.push(format!(
                        "UAV {j} slot {n}: computes for {served} GUs, quota {}",
                        uav.quota
                    ));
                }
            }
        }
        for n in 1..=self.num_slots {
            let relayed: usize = (0..self.num_gus)
                .flat_map(|i| (0..self.num_uavs).map(move |j| (i, j)))
                .filter(|&(i, j)| self.z(i, j, n))
                .count();
            if relayed > s.hap.quota {
                v.push(format!("slot {n}: {relayed} tasks relayed, HAP quota {}", s.hap.quota));
            }
        }
        v
    }
}

/// Horizontal waypoints per UAV at the fixed flight altitude.
///
/// `waypoints[j]` has `num_slots + 1` entries; index 0 is the fixed start
/// and index N the fixed end. Slot n (1-based) is served from waypoint n.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPlan {
    waypoints: Vec<Vec<(f64, f64)>>,
}

impl TrajectoryPlan {
    pub fn new(waypoints: Vec<Vec<(f64, f64)>>) -> Self {
        Self { waypoints }
    }

    /// Straight lines between each UAV's fixed endpoints, equal steps.
    pub fn straight_line(s: &Scenario) -> Self {
        let n = s.num_slots();
        let waypoints = s
            .uavs
            .iter()
            .map(|u| {
                (0..=n)
                    .map(|k| {
                        let t = k as f64 / n as f64;
                        (
                            u.start_position.x + t * (u.end_position.x - u.start_position.x),
                            u.start_position.y + t * (u.end_position.y - u.start_position.y),
                        )
                    })
                    .collect()
            })
            .collect();
        Self { waypoints }
    }

    pub fn num_uavs(&self) -> usize {
        self.waypoints.len()
    }

    pub fn num_slots(&self) -> usize {
        self.waypoints.first().map_or(0, |w| w.len().saturating_sub(1))
    }

    /// Horizontal waypoint of UAV j at slot index n (0..=N).
    pub fn waypoint(&self, j: usize, n: usize) -> (f64, f64) {
        self.waypoints[j][n]
    }

    pub fn set_waypoint(&mut self, j: usize, n: usize, p: (f64, f64)) {
        self.waypoints[j][n] = p;
    }

    /// Full 3D position of UAV j at slot index n.
    pub fn position(&self, j: usize, n: usize, s: &Scenario) -> Position3D {
        let (x, y) = self.waypoints[j][n];
        Position3D::new(x, y, s.uavs[j].altitude())
    }

    /// Per-slot displacement of UAV j over slot n (from waypoint n-1 to n).
    pub fn displacement(&self, j: usize, n: usize) -> f64 {
        let (ax, ay) = self.waypoints[j][n - 1];
        let (bx, by) = self.waypoints[j][n];
        ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt()
    }

    /// Checks the trajectory invariants with exact norms; returns one
    /// message per violation. `tol` is the relative slack (e.g. 1e-9).
    pub fn validate(&self, s: &Scenario, tol: f64) -> Vec<String> {
        let mut v = Vec::new();
        let n_slots = s.num_slots();
        if self.waypoints.len() != s.num_uavs()
            || self.waypoints.iter().any(|w| w.len() != n_slots + 1)
        {
            v.push("trajectory dimensions do not match scenario".to_string());
            return v;
        }
        for (j, uav) in s.uavs.iter().enumerate() {
            let w = &self.waypoints[j];
            if (w[0].0 - uav.start_position.x).abs() > tol
                || (w[0].1 - uav.start_position.y).abs() > tol
            {
                v.push(format!("UAV {j} waypoint 0 differs from fixed start"));
            }
            if (w[n_slots].0 - uav.end_position.x).abs() > tol
                || (w[n_slots].1 - uav.end_position.y).abs() > tol
            {
                v.push(format!("UAV {j} waypoint {n_slots} differs from fixed end"));
            }
            for (k, &(x, y)) in w.iter().enumerate() {
                let pad = tol * (1.0 + s.area_x.max(s.area_y));
                if x < -pad || x > s.area_x + pad || y < -pad || y > s.area_y + pad {
                    v.push(format!("UAV {j} waypoint {k} ({x:.2}, {y:.2}) outside area"));
                }
            }
            let max_step = uav.cruise_speed * s.time.slot_len;
            for n in 1..=n_slots {
                let d = self.displacement(j, n);
                if d > max_step * (1.0 + tol) {
                    v.push(format!(
                        "UAV {j} slot {n} displacement {d:.3} m exceeds {max_step:.3} m"
                    ));
                }
            }
        }
        for j in 0..s.num_uavs() {
            for jp in (j + 1)..s.num_uavs() {
                for n in 0..=n_slots {
                    let (ax, ay) = self.waypoints[j][n];
                    let (bx, by) = self.waypoints[jp][n];
                    let d = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
                    if d < s.min_separation * (1.0 - tol) {
                        v.push(format!(
                            "UAV {j} and UAV {jp} separation {d:.3} m at slot {n} below {} m",
                            s.min_separation
                        ));
                    }
                }
            }
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Unit conversions (applied exactly once, at load time).
// ---------------------------------------------------------------------------

/// dBm to watts: 10^((dBm - 30) / 10).
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// dB to linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Mbit to bits (decimal: 10^6).
pub fn mbit_to_bits(mbit: f64) -> f64 {
    mbit * 1e6
}

pub fn bits_to_mbit(bits: f64) -> f64 {
    bits / 1e6
}

// ---------------------------------------------------------------------------
// Defaults.
// ---------------------------------------------------------------------------

/// Default parameter values.
///
/// Values marked *pinned* are fixed by the scenario definition this library
/// models; values marked *assumed* are engineering defaults for quantities
/// the setting leaves open; override them via the scenario config file when
/// calibrating against a concrete deployment.
pub mod defaults {
    use super::*;

    /// Operation area extent, meters (pinned).
    pub const AREA_M: f64 = 1000.0;
    /// Number of GUs (pinned).
    pub const NUM_GUS: usize = 15;
    /// Number of UAVs (pinned).
    pub const NUM_UAVS: usize = 3;
    /// Number of slots (pinned).
    pub const NUM_SLOTS: usize = 15;
    /// Slot duration, seconds (pinned).
    pub const SLOT_LEN_S: f64 = 2.0;
    /// Minimum inter-UAV separation, meters (pinned).
    pub const MIN_SEPARATION_M: f64 = 20.0;
    /// UAV cruise speed, m/s (pinned).
    pub const CRUISE_SPEED_M_S: f64 = 20.0;
    /// UAV flight altitude, meters (pinned).
    pub const UAV_ALTITUDE_M: f64 = 200.0;
    /// HAP altitude, meters (pinned).
    pub const HAP_ALTITUDE_M: f64 = 20_000.0;
    /// UAV per-slot compute quota (pinned).
    pub const UAV_QUOTA: usize = 3;
    /// HAP per-slot relay quota (pinned).
    pub const HAP_QUOTA: usize = 7;
    /// Average co-channel interference, dBm (pinned).
    pub const INTERFERENCE_DBM: f64 = -90.0;
    /// Number of historical samples per GU (pinned).
    pub const HISTORY_SAMPLES: usize = 200;
    /// Per-slot task-size sample space, Mbit (pinned).
    pub const TASK_SAMPLES_MBIT: [f64; 5] = [0.2, 0.5, 1.0, 1.5, 2.0];
    /// Ambiguity-ball radius (pinned).
    pub const EPSILON: f64 = 0.3;

    /// LoS model environment parameter `a` (assumed; suburban fit).
    pub const LOS_A: f64 = 9.61;
    /// LoS model environment parameter `b`, 1/degree (assumed; suburban fit).
    pub const LOS_B: f64 = 0.16;

    /// CPU cycles per bit drawn per GU from this range (assumed).
    pub const CPU_CYCLES_PER_BIT_RANGE: (f64, f64) = (700.0, 1100.0);
    /// GU local CPU rate, cycles/s (assumed).
    pub const GU_CPU_RATE: f64 = 1.2e9;
    /// UAV CPU rate, cycles/s (assumed).
    pub const UAV_CPU_RATE: f64 = 3e9;
    /// HAP CPU rate, cycles/s (assumed; coverage relay, not a faster core).
    pub const HAP_CPU_RATE: f64 = 2e9;
    /// GU effective capacitance (assumed).
    pub const GU_CAPACITANCE: f64 = 1e-28;
    /// UAV effective capacitance (assumed).
    pub const UAV_CAPACITANCE: f64 = 1e-28;
    /// HAP effective capacitance (assumed).
    pub const HAP_CAPACITANCE: f64 = 1e-29;
    /// GU transmit power, dBm (assumed).
    pub const GU_TX_POWER_DBM: f64 = 20.0;
    /// UAV relay transmit power, dBm (assumed).
    pub const UAV_TX_POWER_DBM: f64 = 30.0;
    /// GU energy budget, joules (assumed).
    pub const GU_ENERGY_BUDGET_J: f64 = 10.0;
    /// UAV energy budget, joules (assumed).
    pub const UAV_ENERGY_BUDGET_J: f64 = 5e4;
    /// HAP compute energy budget, joules (assumed).
    pub const HAP_ENERGY_BUDGET_J: f64 = 1e4;

    /// Channel defaults; all link-budget entries are assumed values.
    pub fn channel() -> ChannelParams {
        ChannelParams {
            los_a: LOS_A,
            los_b: LOS_B,
            beta0: db_to_linear(-60.0),
            pathloss_exp: 2.0,
            nlos_atten: 0.2,
            bandwidth_gu: 2e6,
            noise_power: dbm_to_watts(-110.0),
            interference: dbm_to_watts(INTERFERENCE_DBM),
            bandwidth_uh: 1e7,
            antenna_gain: db_to_linear(10.0),
            total_loss: db_to_linear(-3.0),
            boltzmann: 1.380649e-23,
            noise_temp: 290.0,
            carrier_freq: 2e9,
            light_speed: 3e8,
        }
    }

    /// Rotary-wing propulsion defaults (assumed; typical small rotary UAV).
    pub fn propulsion() -> PropulsionParams {
        PropulsionParams {
            blade_power: 79.86,
            induced_power: 88.63,
            tip_speed: 120.0,
            drag_ratio: 0.6,
            air_density: 1.225,
            rotor_solidity: 0.05,
            rotor_area: 0.503,
            mean_rotor_velocity: 4.03,
            induced_power_model: InducedPowerModel::V0Squared,
        }
    }
}

// ---------------------------------------------------------------------------
// Config file (JSON, unit-suffixed keys, unknown keys rejected).
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundUserConfig {
    pub x_m: f64,
    pub y_m: f64,
    pub cpu_cycles_per_bit: f64,
    pub local_cpu_rate_hz: f64,
    pub capacitance: f64,
    pub tx_power_dbm: f64,
    pub energy_budget_j: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UavConfig {
    pub start_x_m: f64,
    pub start_y_m: f64,
    pub end_x_m: f64,
    pub end_y_m: f64,
    pub altitude_m: f64,
    pub cpu_rate_hz: f64,
    pub capacitance: f64,
    pub tx_power_dbm: f64,
    pub energy_budget_j: f64,
    pub cruise_speed_m_s: f64,
    pub quota: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HapConfig {
    pub x_m: f64,
    pub y_m: f64,
    pub altitude_km: f64,
    pub cpu_rate_hz: f64,
    pub capacitance: f64,
    pub energy_budget_j: f64,
    pub quota: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub los_a: f64,
    pub los_b_per_deg: f64,
    pub beta0_db: f64,
    pub pathloss_exp: f64,
    pub nlos_atten: f64,
    pub bandwidth_gu_hz: f64,
    pub noise_power_dbm: f64,
    pub interference_dbm: f64,
    pub bandwidth_uh_hz: f64,
    pub antenna_gain_db: f64,
    pub total_loss_db: f64,
    pub noise_temp_k: f64,
    pub carrier_freq_hz: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropulsionConfig {
    pub blade_power_w: f64,
    pub induced_power_w: f64,
    pub tip_speed_m_s: f64,
    pub drag_ratio: f64,
    pub air_density_kg_m3: f64,
    pub rotor_solidity: f64,
    pub rotor_area_m2: f64,
    pub mean_rotor_velocity_m_s: f64,
    #[serde(default)]
    pub induced_power_model: InducedPowerModel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub num_slots: usize,
    pub slot_len_s: f64,
}

/// On-disk scenario description. Mirrors [`Scenario`] with unit-suffixed
/// keys; unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub area_x_m: f64,
    pub area_y_m: f64,
    pub min_separation_m: f64,
    pub time: TimeConfig,
    pub gus: Vec<GroundUserConfig>,
    pub uavs: Vec<UavConfig>,
    pub hap: HapConfig,
    pub channel: ChannelConfig,
    pub propulsion: PropulsionConfig,
    /// Per-slot task-size sample space, Mbit, strictly increasing.
    pub task_samples_mbit: Vec<f64>,
}

impl ScenarioConfig {
    pub fn from_json(json: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario config serializes")
    }

    /// Converts units (once) and builds the in-memory scenario plus the
    /// task-size sample values in bits.
    pub fn to_scenario(&self) -> Result<(Scenario, Vec<f64>), ConfigError> {
        let gus = self
            .gus
            .iter()
            .enumerate()
            .map(|(id, g)| GroundUser {
                id,
                position: Position3D::new(g.x_m, g.y_m, 0.0),
                cpu_cycles_per_bit: g.cpu_cycles_per_bit,
                local_cpu_rate: g.local_cpu_rate_hz,
                capacitance: g.capacitance,
                tx_power: dbm_to_watts(g.tx_power_dbm),
                energy_budget: g.energy_budget_j,
            })
            .collect();
        let uavs = self
            .uavs
            .iter()
            .enumerate()
            .map(|(id, u)| Uav {
                id,
                start_position: Position3D::new(u.start_x_m, u.start_y_m, u.altitude_m),
                end_position: Position3D::new(u.end_x_m, u.end_y_m, u.altitude_m),
                cpu_rate: u.cpu_rate_hz,
                capacitance: u.capacitance,
                tx_power: dbm_to_watts(u.tx_power_dbm),
                energy_budget: u.energy_budget_j,
                cruise_speed: u.cruise_speed_m_s,
                quota: u.quota,
            })
            .collect();
        let hap = Hap {
            position: Position3D::new(self.hap.x_m, self.hap.y_m, self.hap.altitude_km * 1000.0),
            cpu_rate: self.hap.cpu_rate_hz,
            capacitance: self.hap.capacitance,
            energy_budget: self.hap.energy_budget_j,
            quota: self.hap.quota,
        };
        let ch = &self.channel;
        let channel = ChannelParams {
            los_a: ch.los_a,
            los_b: ch.los_b_per_deg,
            beta0: db_to_linear(ch.beta0_db),
            pathloss_exp: ch.pathloss_exp,
            nlos_atten: ch.nlos_atten,
            bandwidth_gu: ch.bandwidth_gu_hz,
            noise_power: dbm_to_watts(ch.noise_power_dbm),
            interference: dbm_to_watts(ch.interference_dbm),
            bandwidth_uh: ch.bandwidth_uh_hz,
            antenna_gain: db_to_linear(ch.antenna_gain_db),
            total_loss: db_to_linear(ch.total_loss_db),
            boltzmann: 1.380649e-23,
            noise_temp: ch.noise_temp_k,
            carrier_freq: ch.carrier_freq_hz,
            light_speed: 3e8,
        };
        let pp = &self.propulsion;
        let propulsion = PropulsionParams {
            blade_power: pp.blade_power_w,
            induced_power: pp.induced_power_w,
            tip_speed: pp.tip_speed_m_s,
            drag_ratio: pp.drag_ratio,
            air_density: pp.air_density_kg_m3,
            rotor_solidity: pp.rotor_solidity,
            rotor_area: pp.rotor_area_m2,
            mean_rotor_velocity: pp.mean_rotor_velocity_m_s,
            induced_power_model: pp.induced_power_model,
        };
        let scenario = Scenario {
            area_x: self.area_x_m,
            area_y: self.area_y_m,
            gus,
            uavs,
            hap,
            channel,
            propulsion,
            time: TimeGrid {
                num_slots: self.time.num_slots,
                slot_len: self.time.slot_len_s,
            },
            min_separation: self.min_separation_m,
        };
        if self.task_samples_mbit.is_empty() {
            return Err(ConfigError::Invalid("task_samples_mbit must be nonempty".into()));
        }
        if self.task_samples_mbit.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::Invalid(
                "task_samples_mbit must be strictly increasing".into(),
            ));
        }
        let samples_bits = self.task_samples_mbit.iter().copied().map(mbit_to_bits).collect();
        Ok((scenario, samples_bits))
    }

    /// Inverse of [`to_scenario`](Self::to_scenario) for writing configs.
    pub fn from_scenario(s: &Scenario, task_samples_bits: &[f64]) -> Self {
        fn watts_to_dbm(w: f64) -> f64 {
            10.0 * w.log10() + 30.0
        }
        fn linear_to_db(l: f64) -> f64 {
            10.0 * l.log10()
        }
        ScenarioConfig {
            area_x_m: s.area_x,
            area_y_m: s.area_y,
            min_separation_m: s.min_separation,
            time: TimeConfig {
                num_slots: s.time.num_slots,
                slot_len_s: s.time.slot_len,
            },
            gus: s
                .gus
                .iter()
                .map(|g| GroundUserConfig {
                    x_m: g.position.x,
                    y_m: g.position.y,
                    cpu_cycles_per_bit: g.cpu_cycles_per_bit,
                    local_cpu_rate_hz: g.local_cpu_rate,
                    capacitance: g.capacitance,
                    tx_power_dbm: watts_to_dbm(g.tx_power),
                    energy_budget_j: g.energy_budget,
                })
                .collect(),
            uavs: s
                .uavs
                .iter()
                .map(|u| UavConfig {
                    start_x_m: u.start_position.x,
                    start_y_m: u.start_position.y,
                    end_x_m: u.end_position.x,
                    end_y_m: u.end_position.y,
                    altitude_m: u.altitude(),
                    cpu_rate_hz: u.cpu_rate,
                    capacitance: u.capacitance,
                    tx_power_dbm: watts_to_dbm(u.tx_power),
                    energy_budget_j: u.energy_budget,
                    cruise_speed_m_s: u.cruise_speed,
                    quota: u.quota,
                })
                .collect(),
            hap: HapConfig {
                x_m: s.hap.position.x,
                y_m: s.hap.position.y,
                altitude_km: s.hap.position.z / 1000.0,
                cpu_rate_hz: s.hap.cpu_rate,
                capacitance: s.hap.capacitance,
                energy_budget_j: s.hap.energy_budget,
                quota: s.hap.quota,
            },
            channel: ChannelConfig {
                los_a: s.channel.los_a,
                los_b_per_deg: s.channel.los_b,
                beta0_db: linear_to_db(s.channel.beta0),
                pathloss_exp: s.channel.pathloss_exp,
                nlos_atten: s.channel.nlos_atten,
                bandwidth_gu_hz: s.channel.bandwidth_gu,
                noise_power_dbm: watts_to_dbm(s.channel.noise_power),
                interference_dbm: watts_to_dbm(s.channel.interference),
                bandwidth_uh_hz: s.channel.bandwidth_uh,
                antenna_gain_db: linear_to_db(s.channel.antenna_gain),
                total_loss_db: linear_to_db(s.channel.total_loss),
                noise_temp_k: s.channel.noise_temp,
                carrier_freq_hz: s.channel.carrier_freq,
            },
            propulsion: PropulsionConfig {
                blade_power_w: s.propulsion.blade_power,
                induced_power_w: s.propulsion.induced_power,
                tip_speed_m_s: s.propulsion.tip_speed,
                drag_ratio: s.propulsion.drag_ratio,
                air_density_kg_m3: s.propulsion.air_density,
                rotor_solidity: s.propulsion.rotor_solidity,
                rotor_area_m2: s.propulsion.rotor_area,
                mean_rotor_velocity_m_s: s.propulsion.mean_rotor_velocity,
                induced_power_model: s.propulsion.induced_power_model,
            },
            task_samples_mbit: task_samples_bits.iter().map(|&b| bits_to_mbit(b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate_scenario, ScenarioOverrides};

    #[test]
    fn default_generated_scenario_is_ok() {
        let s = generate_scenario(7, &ScenarioOverrides::default());
        assert!(validate_scenario(&s).is_empty());
    }

    #[test]
    fn gu_outside_area_is_flagged() {
        let mut s = generate_scenario(7, &ScenarioOverrides::default());
        s.gus[0].position.x = -1.0;
        let v = validate_scenario(&s);
        assert!(v.iter().any(|m| m.contains("GU 0") && m.contains("outside area")), "{v:?}");
    }

    #[test]
    fn coincident_uav_starts_violate_separation() {
        let mut s = generate_scenario(7, &ScenarioOverrides::default());
        assert_eq!(s.min_separation, 20.0);
        let p = Position3D::new(500.0, 500.0, s.uavs[0].altitude());
        s.uavs[0].start_position = p;
        s.uavs[1].start_position = p;
        let v = validate_scenario(&s);
        assert!(v.iter().any(|m| m.contains("separation")), "{v:?}");
    }

    #[test]
    fn validate_is_pure() {
        let mut s = generate_scenario(3, &ScenarioOverrides::default());
        s.gus[2].tx_power = -1.0;
        let a = validate_scenario(&s);
        let b = validate_scenario(&s);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn decision_invariants() {
        let s = generate_scenario(7, &ScenarioOverrides::default());
        let mut dec = OffloadDecision::all_local(s.num_gus(), s.num_uavs(), s.num_slots());
        assert!(dec.validate(&s).is_empty());

        dec.set_offload(0, 0, 1, false);
        dec.set_offload(0, 1, 1, true); // second UAV collects the same part
        let v = dec.validate(&s);
        assert!(v.iter().any(|m| m.contains("collected by 2")), "{v:?}");

        dec.clear(0, 1);
        assert!(dec.validate(&s).is_empty());

        // Exceed the UAV compute quota.
        for i in 0..=s.uavs[0].quota {
            dec.set_offload(i, 0, 2, false);
        }
        let v = dec.validate(&s);
        assert!(v.iter().any(|m| m.contains("quota")), "{v:?}");
    }

    #[test]
    fn trajectory_invariants() {
        let s = generate_scenario(7, &ScenarioOverrides::default());
        let mut traj = TrajectoryPlan::straight_line(&s);
        assert!(traj.validate(&s, 1e-9).is_empty());

        // Teleporting a waypoint breaks the speed constraint.
        let (x, y) = traj.waypoint(0, 1);
        traj.set_waypoint(0, 1, (x + 500.0, y));
        let v = traj.validate(&s, 1e-9);
        assert!(v.iter().any(|m| m.contains("displacement")), "{v:?}");
    }

    #[test]
    fn unit_conversions() {
        assert!((dbm_to_watts(-90.0) - 1e-12).abs() < 1e-24);
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-12);
        assert!((db_to_linear(10.0) - 10.0).abs() < 1e-12);
        assert_eq!(mbit_to_bits(1.5), 1.5e6);
    }

    #[test]
    fn config_round_trip_and_unknown_key_rejection() {
        let s = generate_scenario(11, &ScenarioOverrides::default());
        let samples: Vec<f64> =
            defaults::TASK_SAMPLES_MBIT.iter().map(|&m| mbit_to_bits(m)).collect();
        let cfg = ScenarioConfig::from_scenario(&s, &samples);
        let json = cfg.to_json();
        let cfg2 = ScenarioConfig::from_json(&json).unwrap();
        let (s2, samples2) = cfg2.to_scenario().unwrap();
        assert!(validate_scenario(&s2).is_empty());
        assert_eq!(samples, samples2);
        assert_eq!(s.num_gus(), s2.num_gus());
        assert!((s.gus[0].tx_power - s2.gus[0].tx_power).abs() / s.gus[0].tx_power < 1e-12);

        let bad = json.replacen("\"area_x_m\"", "\"area_x_meters\"", 1);
        assert!(ScenarioConfig::from_json(&bad).is_err());
    }
}
