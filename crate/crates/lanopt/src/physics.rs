//! Channel, delay, energy, and propulsion models.
//!
//! Every operation here is a pure function of positions, decisions, and a
//! task size; callers may evaluate many (GU, slot, sample) triples
//! concurrently. All delay and energy terms are linear in the task size,
//! which the solver exploits heavily: [`UnitCosts`] caches the per-bit
//! coefficients of every route leg for a fixed trajectory.

use crate::scenario::{
    ChannelParams, InducedPowerModel, OffloadDecision, Position3D, PropulsionParams, Scenario,
    TrajectoryPlan,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PhysicsError {
    #[error("elevation angle {0} deg outside [0, 90]")]
    AngleOutOfRange(f64),
    #[error("UAV altitude must be positive, got {0} m")]
    NonPositiveAltitude(f64),
    #[error("link rate is zero for GU {gu} UAV {uav} slot {slot} with an active indicator")]
    ZeroRate { gu: usize, uav: usize, slot: usize },
    #[error("UAV {uav} slot {slot}: flight time {fly:.3} s exceeds slot length {slot_len:.3} s")]
    SpeedExceeded { uav: usize, slot: usize, fly: f64, slot_len: f64 },
}

/// Guard against division blowups at coincident horizontal positions.
const MIN_HORIZONTAL_DIST: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Air-to-ground channel.
// ---------------------------------------------------------------------------

/// Probability of a line-of-sight link at elevation angle `theta_deg`
/// (degrees): `1 / (1 + a exp(-b (theta - a)))`.
pub fn los_probability(theta_deg: f64, a: f64, b: f64) -> Result<f64, PhysicsError> {
    if !(0.0..=90.0).contains(&theta_deg) {
        return Err(PhysicsError::AngleOutOfRange(theta_deg));
    }
    Ok(1.0 / (1.0 + a * (-b * (theta_deg - a)).exp()))
}

/// Elevation angle (degrees) from a ground point to an aerial point.
fn elevation_deg(ground: &Position3D, air: &Position3D) -> f64 {
    let r = ground.horizontal_distance(air);
    let h = air.z - ground.z;
    h.atan2(r).to_degrees()
}

/// Mixed LoS/NLoS channel gain between a GU and a UAV position:
/// `[P_LoS + (1 - P_LoS) kappa] * beta0 * d^(-alpha)`.
pub fn gu_uav_gain(
    gu_pos: &Position3D,
    uav_pos: &Position3D,
    ch: &ChannelParams,
) -> Result<f64, PhysicsError> {
    if uav_pos.z <= 0.0 {
        return Err(PhysicsError::NonPositiveAltitude(uav_pos.z));
    }
    let d = gu_pos.distance(uav_pos);
    let theta = elevation_deg(gu_pos, uav_pos);
    let p_los = los_probability(theta, ch.los_a, ch.los_b)?;
    let mix = p_los + (1.0 - p_los) * ch.nlos_atten;
    Ok(mix * ch.beta0 * d.powf(-ch.pathloss_exp))
}

/// GU uplink rate, bits/s: `B log2(1 + p g / (sigma^2 + I))`.
pub fn rate_gu_uav(gain: f64, ch: &ChannelParams, p_tx: f64) -> f64 {
    ch.bandwidth_gu * (1.0 + p_tx * gain / (ch.noise_power + ch.interference)).log2()
}

/// Free-space path loss `(c / (4 pi d f))^2`.
pub fn free_space_loss(d: f64, ch: &ChannelParams) -> f64 {
    let x = ch.light_speed / (4.0 * std::f64::consts::PI * d * ch.carrier_freq);
    x * x
}

/// UAV-to-HAP rate, bits/s: `B log2(1 + p G L_l L / (B K_B T_s))`.
pub fn rate_uav_hap(
    uav_pos: &Position3D,
    hap_pos: &Position3D,
    ch: &ChannelParams,
    p_tx: f64,
) -> f64 {
    let d = uav_pos.distance(hap_pos);
    let l = free_space_loss(d, ch);
    let snr =
        p_tx * ch.antenna_gain * ch.total_loss * l / (ch.bandwidth_uh * ch.boltzmann * ch.noise_temp);
    ch.bandwidth_uh * (1.0 + snr).log2()
}

// ---------------------------------------------------------------------------
// Propulsion.
// ---------------------------------------------------------------------------

/// Rotary-wing propulsion power at horizontal speed `v` (m/s).
pub fn propulsion_power(v: f64, pp: &PropulsionParams) -> f64 {
    debug_assert!(v >= 0.0);
    let v2 = v * v;
    let blade = pp.blade_power * (1.0 + 3.0 * v2 / (pp.tip_speed * pp.tip_speed));
    let parasite =
        0.5 * pp.drag_ratio * pp.air_density * pp.rotor_solidity * pp.rotor_area * v2 * v;
    let v0sq = pp.mean_rotor_velocity * pp.mean_rotor_velocity;
    let induced = match pp.induced_power_model {
        InducedPowerModel::V0Squared => {
            let inner = (1.0 + v2 * v2 / (4.0 * v0sq)).sqrt() - v2 / (2.0 * v0sq);
            pp.induced_power * inner.max(0.0).sqrt()
        }
        InducedPowerModel::V0Fourth => {
            let inner = (1.0 + v2 * v2 / (4.0 * v0sq * v0sq)).sqrt() - v2 / (2.0 * v0sq);
            pp.induced_power * inner.max(0.0).sqrt()
        }
    };
    blade + parasite + induced
}

/// Hover power: the v = 0 limit, `P1 + P2`.
pub fn hover_power(pp: &PropulsionParams) -> f64 {
    pp.blade_power + pp.induced_power
}

/// Propulsion energy of UAV j over slot n (n >= 1): fly at cruise speed for
/// the displacement, hover for the rest of the slot.
pub fn flight_energy(
    j: usize,
    n: usize,
    traj: &TrajectoryPlan,
    s: &Scenario,
) -> Result<f64, PhysicsError> {
    let uav = &s.uavs[j];
    let tau = s.time.slot_len;
    let t_fly = traj.displacement(j, n) / uav.cruise_speed;
    if t_fly > tau * (1.0 + 1e-9) {
        return Err(PhysicsError::SpeedExceeded { uav: j, slot: n, fly: t_fly, slot_len: tau });
    }
    let p_fly = propulsion_power(uav.cruise_speed, &s.propulsion);
    let p_hov = hover_power(&s.propulsion);
    Ok(p_fly * t_fly + p_hov * (tau - t_fly))
}

// ---------------------------------------------------------------------------
// Slot costs.
// ---------------------------------------------------------------------------

/// Delay and energy of processing one GU's slot-n task part of a given size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotCost {
    /// Total delay, seconds.
    pub delay: f64,
    /// GU transmission + local compute energy, joules.
    pub gu_energy: f64,
    /// On-board UAV compute energy, joules.
    pub uav_compute_energy: f64,
    /// UAV relay transmission energy, joules.
    pub uav_relay_energy: f64,
    /// HAP compute energy, joules.
    pub hap_energy: f64,
}

/// Evaluates the delay and energies for GU `i` in slot `n` (1-based) with a
/// task part of `s_bits` bits under the given decisions and trajectory.
pub fn slot_cost(
    i: usize,
    n: usize,
    s_bits: f64,
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    sc: &Scenario,
) -> Result<SlotCost, PhysicsError> {
    let gu = &sc.gus[i];
    let bits_cycles = s_bits * gu.cpu_cycles_per_bit;

    let local = if dec.is_local(i, n) { 1.0 } else { 0.0 };
    let mut delay = local * bits_cycles / gu.local_cpu_rate;
    let mut gu_energy =
        local * gu.capacitance * bits_cycles * gu.local_cpu_rate * gu.local_cpu_rate;
    let mut uav_compute_energy = 0.0;
    let mut uav_relay_energy = 0.0;
    let mut hap_energy = 0.0;

    for (j, uav) in sc.uavs.iter().enumerate() {
        if dec.x(i, j, n) {
            let pos = traj.position(j, n, sc);
            let gain = gu_uav_gain(&gu.position, &pos, &sc.channel)?;
            let r_ug = rate_gu_uav(gain, &sc.channel, gu.tx_power);
            if !(r_ug > 0.0) || !r_ug.is_finite() {
                return Err(PhysicsError::ZeroRate { gu: i, uav: j, slot: n });
            }
            let t_tx = s_bits / r_ug;
            delay += t_tx;
            gu_energy += gu.tx_power * t_tx;

            if dec.y(i, j, n) {
                delay += bits_cycles / uav.cpu_rate;
                uav_compute_energy += uav.capacitance * bits_cycles * uav.cpu_rate * uav.cpu_rate;
            }
            if dec.z(i, j, n) {
                let r_uh = rate_uav_hap(&pos, &sc.hap.position, &sc.channel, uav.tx_power);
                if !(r_uh > 0.0) || !r_uh.is_finite() {
                    return Err(PhysicsError::ZeroRate { gu: i, uav: j, slot: n });
                }
                let t_relay = s_bits / r_uh;
                delay += t_relay;
                uav_relay_energy += uav.tx_power * t_relay;
                delay += bits_cycles / sc.hap.cpu_rate;
                hap_energy +=
                    sc.hap.capacitance * bits_cycles * sc.hap.cpu_rate * sc.hap.cpu_rate;
            }
        }
    }

    Ok(SlotCost { delay, gu_energy, uav_compute_energy, uav_relay_energy, hap_energy })
}

/// Per-(GU, slot) task sizes, bits.
#[derive(Debug, Clone)]
pub struct SizeGrid {
    num_slots: usize,
    data: Vec<f64>,
}

impl SizeGrid {
    pub fn new(num_gus: usize, num_slots: usize, bits: f64) -> Self {
        Self { num_slots, data: vec![bits; num_gus * num_slots] }
    }

    /// One fixed size per GU, constant across slots.
    pub fn from_per_gu(per_gu_bits: &[f64], num_slots: usize) -> Self {
        let mut data = Vec::with_capacity(per_gu_bits.len() * num_slots);
        for &b in per_gu_bits {
            data.extend(std::iter::repeat(b).take(num_slots));
        }
        Self { num_slots, data }
    }

    pub fn get(&self, i: usize, n: usize) -> f64 {
        self.data[i * self.num_slots + (n - 1)]
    }

    pub fn set(&mut self, i: usize, n: usize, bits: f64) {
        self.data[i * self.num_slots + (n - 1)] = bits;
    }
}

/// Total energy drawn by UAV j over the horizon: relay transmissions,
/// on-board computation, and propulsion.
pub fn total_uav_energy(
    j: usize,
    dec: &OffloadDecision,
    traj: &TrajectoryPlan,
    sc: &Scenario,
    sizes: &SizeGrid,
) -> Result<f64, PhysicsError> {
    let mut total = 0.0;
    for n in 1..=sc.num_slots() {
        for i in 0..sc.num_gus() {
            let c = slot_cost(i, n, sizes.get(i, n), dec, traj, sc)?;
            // slot_cost sums over all collecting UAVs; restrict to j.
            if dec.x(i, j, n) {
                total += c.uav_compute_energy + c.uav_relay_energy;
            }
        }
        total += flight_energy(j, n, traj, sc)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Per-bit route coefficients for a fixed trajectory.
// ---------------------------------------------------------------------------

/// Per-bit delay/energy coefficients of every route leg at a fixed
/// trajectory. One evaluation path shared by the subproblem objective, the
/// master-problem rows, the worst-case LP, and the audits, so their values
/// agree bit-for-bit.
#[derive(Debug, Clone)]
pub struct UnitCosts {
    num_uavs: usize,
    num_slots: usize,
    /// 1/R^ug for (i, j, n), s/bit.
    pub inv_rate_gu: Vec<f64>,
    /// 1/R^uh for (j, n), s/bit.
    pub inv_rate_uh: Vec<f64>,
    /// Propulsion energy per slot (j, n), joules (size-independent).
    pub flight_energy: Vec<f64>,
}

impl UnitCosts {
    pub fn compute(sc: &Scenario, traj: &TrajectoryPlan) -> Result<Self, PhysicsError> {
        let (ni, nj, nn) = (sc.num_gus(), sc.num_uavs(), sc.num_slots());
        let mut inv_rate_gu = vec![0.0; ni * nj * nn];
        let mut inv_rate_uh = vec![0.0; nj * nn];
        let mut flight = vec![0.0; nj * nn];
        for j in 0..nj {
            for n in 1..=nn {
                let pos = traj.position(j, n, sc);
                let r_uh = rate_uav_hap(&pos, &sc.hap.position, &sc.channel, sc.uavs[j].tx_power);
                inv_rate_uh[j * nn + n - 1] = 1.0 / r_uh;
                flight[j * nn + n - 1] = flight_energy(j, n, traj, sc)?;
                for i in 0..ni {
                    let gain = gu_uav_gain(&sc.gus[i].position, &pos, &sc.channel)?;
                    let r = rate_gu_uav(gain, &sc.channel, sc.gus[i].tx_power);
                    inv_rate_gu[(i * nj + j) * nn + n - 1] = 1.0 / r;
                }
            }
        }
        Ok(Self {
            num_uavs: nj,
            num_slots: nn,
            inv_rate_gu,
            inv_rate_uh,
            flight_energy: flight,
        })
    }

    pub fn tx_delay_per_bit(&self, i: usize, j: usize, n: usize) -> f64 {
        self.inv_rate_gu[(i * self.num_uavs + j) * self.num_slots + n - 1]
    }

    pub fn relay_delay_per_bit(&self, j: usize, n: usize) -> f64 {
        self.inv_rate_uh[j * self.num_slots + n - 1]
    }

    pub fn flight_energy_at(&self, j: usize, n: usize) -> f64 {
        self.flight_energy[j * self.num_slots + n - 1]
    }

    pub fn local_delay_per_bit(sc: &Scenario, i: usize) -> f64 {
        sc.gus[i].cpu_cycles_per_bit / sc.gus[i].local_cpu_rate
    }

    pub fn uav_compute_delay_per_bit(sc: &Scenario, i: usize, j: usize) -> f64 {
        sc.gus[i].cpu_cycles_per_bit / sc.uavs[j].cpu_rate
    }

    pub fn hap_compute_delay_per_bit(sc: &Scenario, i: usize) -> f64 {
        sc.gus[i].cpu_cycles_per_bit / sc.hap.cpu_rate
    }

    pub fn local_energy_per_bit(sc: &Scenario, i: usize) -> f64 {
        let gu = &sc.gus[i];
        gu.capacitance * gu.cpu_cycles_per_bit * gu.local_cpu_rate * gu.local_cpu_rate
    }

    pub fn gu_tx_energy_per_bit(&self, sc: &Scenario, i: usize, j: usize, n: usize) -> f64 {
        sc.gus[i].tx_power * self.tx_delay_per_bit(i, j, n)
    }

    pub fn uav_compute_energy_per_bit(sc: &Scenario, i: usize, j: usize) -> f64 {
        let uav = &sc.uavs[j];
        uav.capacitance * sc.gus[i].cpu_cycles_per_bit * uav.cpu_rate * uav.cpu_rate
    }

    pub fn uav_relay_energy_per_bit(&self, sc: &Scenario, j: usize, n: usize) -> f64 {
        sc.uavs[j].tx_power * self.relay_delay_per_bit(j, n)
    }

    pub fn hap_energy_per_bit(sc: &Scenario, i: usize) -> f64 {
        sc.hap.capacitance * sc.gus[i].cpu_cycles_per_bit * sc.hap.cpu_rate * sc.hap.cpu_rate
    }
}

// ---------------------------------------------------------------------------
// Analytic gradients w.r.t. horizontal UAV coordinates.
// ---------------------------------------------------------------------------

/// Value and gradient of `1/R^ug` w.r.t. the UAV's horizontal coordinates.
pub fn inv_rate_gu_grad(
    gu_pos: &Position3D,
    uav_xy: (f64, f64),
    altitude: f64,
    ch: &ChannelParams,
    p_tx: f64,
) -> (f64, [f64; 2]) {
    let (qx, qy) = uav_xy;
    let dx = qx - gu_pos.x;
    let dy = qy - gu_pos.y;
    let h = altitude - gu_pos.z;
    let r = (dx * dx + dy * dy).sqrt();
    let d = (r * r + h * h).sqrt();

    let theta = h.atan2(r).to_degrees();
    let p_los = 1.0 / (1.0 + ch.los_a * (-ch.los_b * (theta - ch.los_a)).exp());
    let mix = p_los + (1.0 - p_los) * ch.nlos_atten;
    let d_pow = d.powf(-ch.pathloss_exp);
    let gain = mix * ch.beta0 * d_pow;

    let gamma = p_tx / (ch.noise_power + ch.interference);
    let rate = ch.bandwidth_gu * (1.0 + gamma * gain).log2();
    let value = 1.0 / rate;

    // d(theta_deg)/dr = -(180/pi) h / d^2; dr/dqx = dx / r (guarded).
    let dp_dtheta = ch.los_b * p_los * (1.0 - p_los);
    let dtheta_dr = -h / (d * d) * (180.0 / std::f64::consts::PI);
    let dmix_dr = (1.0 - ch.nlos_atten) * dp_dtheta * dtheta_dr;
    // dd/dr = r/d.
    let dgain_dr = ch.beta0
        * (dmix_dr * d_pow - mix * ch.pathloss_exp * d.powf(-ch.pathloss_exp - 1.0) * (r / d));

    let drate_dgain = ch.bandwidth_gu / std::f64::consts::LN_2 * gamma / (1.0 + gamma * gain);
    let dvalue_dr = -(1.0 / (rate * rate)) * drate_dgain * dgain_dr;

    let grad = if r < MIN_HORIZONTAL_DIST {
        [0.0, 0.0]
    } else {
        [dvalue_dr * dx / r, dvalue_dr * dy / r]
    };
    (value, grad)
}

/// Value and gradient of `1/R^uh` w.r.t. the UAV's horizontal coordinates.
pub fn inv_rate_uh_grad(
    uav_xy: (f64, f64),
    altitude: f64,
    hap_pos: &Position3D,
    ch: &ChannelParams,
    p_tx: f64,
) -> (f64, [f64; 2]) {
    let (qx, qy) = uav_xy;
    let dx = qx - hap_pos.x;
    let dy = qy - hap_pos.y;
    let dz = altitude - hap_pos.z;
    let d = (dx * dx + dy * dy + dz * dz).sqrt();

    let c_fac = {
        let x = ch.light_speed / (4.0 * std::f64::consts::PI * ch.carrier_freq);
        x * x
    };
    let loss = c_fac / (d * d);
    let s_fac =
        p_tx * ch.antenna_gain * ch.total_loss / (ch.bandwidth_uh * ch.boltzmann * ch.noise_temp);
    let rate = ch.bandwidth_uh * (1.0 + s_fac * loss).log2();
    let value = 1.0 / rate;

    let dloss_dd = -2.0 * c_fac / (d * d * d);
    let drate_dd = ch.bandwidth_uh / std::f64::consts::LN_2 * s_fac * dloss_dd / (1.0 + s_fac * loss);
    let dvalue_dd = -(1.0 / (rate * rate)) * drate_dd;
    (value, [dvalue_dd * dx / d, dvalue_dd * dy / d])
}

/// Value of a slot's propulsion energy plus gradients w.r.t. the slot's two
/// waypoints `(q_{n-1}, q_n)`. At zero displacement the norm is not
/// differentiable; the zero subgradient is returned.
pub fn flight_energy_grad(
    prev_xy: (f64, f64),
    next_xy: (f64, f64),
    sc: &Scenario,
    j: usize,
) -> (f64, [f64; 2], [f64; 2]) {
    let uav = &sc.uavs[j];
    let tau = s_slot(sc);
    let p_fly = propulsion_power(uav.cruise_speed, &sc.propulsion);
    let p_hov = hover_power(&sc.propulsion);
    let dx = next_xy.0 - prev_xy.0;
    let dy = next_xy.1 - prev_xy.1;
    let dist = (dx * dx + dy * dy).sqrt();
    let value = p_hov * tau + (p_fly - p_hov) * dist / uav.cruise_speed;
    if dist < MIN_HORIZONTAL_DIST {
        return (value, [0.0, 0.0], [0.0, 0.0]);
    }
    let k = (p_fly - p_hov) / uav.cruise_speed;
    let g_next = [k * dx / dist, k * dy / dist];
    (value, [-g_next[0], -g_next[1]], g_next)
}

fn s_slot(sc: &Scenario) -> f64 {
    sc.time.slot_len
}
