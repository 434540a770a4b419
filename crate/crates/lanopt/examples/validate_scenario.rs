//! Scenario construction, validation, and config-file round trip.
//!
//! Run with: cargo run --example validate_scenario

use lanopt::harness::{default_sample_space, generate_scenario, ScenarioOverrides};
use lanopt::scenario::{validate_scenario, Position3D, ScenarioConfig};

fn main() {
    let scenario = generate_scenario(7, &ScenarioOverrides::default());
    println!(
        "generated: {} GUs, {} UAVs, {} slots over {} x {} m",
        scenario.num_gus(),
        scenario.num_uavs(),
        scenario.num_slots(),
        scenario.area_x,
        scenario.area_y
    );
    println!("violations: {:?}", validate_scenario(&scenario));

    // Break two invariants and validate again.
    let mut broken = scenario.clone();
    broken.gus[0].position.x = -1.0;
    broken.uavs[1].start_position = Position3D::new(
        broken.uavs[0].start_position.x,
        broken.uavs[0].start_position.y,
        broken.uavs[1].altitude(),
    );
    println!("\nafter breaking GU 0 and UAV separation:");
    for v in validate_scenario(&broken) {
        println!("  {v}");
    }

    // Config round trip: JSON with unit-suffixed keys, unknown keys rejected.
    let space = default_sample_space();
    let cfg = ScenarioConfig::from_scenario(&scenario, space.values());
    let json = cfg.to_json();
    println!("\nconfig file is {} bytes; first lines:", json.len());
    for line in json.lines().take(6) {
        println!("  {line}");
    }
    let reparsed = ScenarioConfig::from_json(&json).expect("round trip parses");
    let (s2, _) = reparsed.to_scenario().expect("round trip converts");
    assert!(validate_scenario(&s2).is_empty());

    let bad = json.replacen("\"area_x_m\"", "\"area_x_furlongs\"", 1);
    println!("\nunknown key rejected: {}", ScenarioConfig::from_json(&bad).is_err());
}
