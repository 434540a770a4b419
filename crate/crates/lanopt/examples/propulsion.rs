//! Rotary-wing propulsion power across the speed range, and per-slot
//! flight energy for partial-slot movement.
//!
//! Run with: cargo run --example propulsion

use lanopt::harness::{generate_scenario, ScenarioOverrides};
use lanopt::physics::{flight_energy, hover_power, propulsion_power};
use lanopt::scenario::{defaults, InducedPowerModel, TrajectoryPlan};

fn main() {
    let mut pp = defaults::propulsion();
    println!("hover power: {:.2} W (blade {} + induced {})", hover_power(&pp), pp.blade_power, pp.induced_power);

    println!("\npower vs speed:");
    println!("  v m/s    default model W    conventional induced-term W");
    for v in [0.0, 2.0, 5.0, 10.0, 15.0, 20.0] {
        let p_default = propulsion_power(v, &pp);
        pp.induced_power_model = InducedPowerModel::V0Fourth;
        let p_conv = propulsion_power(v, &pp);
        pp.induced_power_model = InducedPowerModel::V0Squared;
        println!("  {v:>5.1}    {p_default:>15.2}    {p_conv:>25.2}");
    }

    // Flight energy over one slot for varying displacement.
    let mut ov = ScenarioOverrides::default();
    ov.num_gus = Some(1);
    ov.num_uavs = Some(1);
    ov.num_slots = Some(2);
    let sc = generate_scenario(1, &ov);
    let step = sc.uavs[0].cruise_speed * sc.time.slot_len;
    println!("\nper-slot energy, slot length {} s, cruise {} m/s:", sc.time.slot_len, sc.uavs[0].cruise_speed);
    for frac in [0.0, 0.25, 0.5, 1.0] {
        let mut traj = TrajectoryPlan::straight_line(&sc);
        let start = traj.waypoint(0, 0);
        for n in 1..=sc.num_slots() {
            traj.set_waypoint(0, n, start);
        }
        traj.set_waypoint(0, 1, (start.0 + frac * step, start.1));
        let e = flight_energy(0, 1, &traj, &sc).unwrap();
        println!("  displacement {:>5.1} m -> {e:>8.2} J", frac * step);
    }
}
