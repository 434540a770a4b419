//! Air-to-ground and UAV-to-HAP channel models: LoS probability, mixed
//! gain, and achievable rates as the link geometry changes.
//!
//! Run with: cargo run --example channel_rates

use lanopt::physics::{free_space_loss, gu_uav_gain, los_probability, rate_gu_uav, rate_uav_hap};
use lanopt::scenario::{defaults, Position3D};

fn main() {
    let ch = defaults::channel();

    println!("LoS probability vs elevation angle (a = {}, b = {}):", ch.los_a, ch.los_b);
    for theta in [0.0, 10.0, 30.0, 45.0, 60.0, 90.0] {
        let p = los_probability(theta, ch.los_a, ch.los_b).unwrap();
        println!("  theta {theta:>4.0} deg -> P_LoS {p:.4}");
    }

    let gu = Position3D::new(0.0, 0.0, 0.0);
    let p_tx = lanopt::scenario::dbm_to_watts(defaults::GU_TX_POWER_DBM);
    println!("\nGU-UAV link at altitude {} m:", defaults::UAV_ALTITUDE_M);
    println!("  horizontal m     gain           rate Mbit/s");
    for r in [0.0, 100.0, 200.0, 400.0, 800.0] {
        let uav = Position3D::new(r, 0.0, defaults::UAV_ALTITUDE_M);
        let g = gu_uav_gain(&gu, &uav, &ch).unwrap();
        let rate = rate_gu_uav(g, &ch, p_tx);
        println!("  {r:>10.0}     {g:>10.3e}    {:>8.3}", rate / 1e6);
    }

    let hap = Position3D::new(500.0, 500.0, defaults::HAP_ALTITUDE_M);
    let p_uav = lanopt::scenario::dbm_to_watts(defaults::UAV_TX_POWER_DBM);
    println!("\nUAV-HAP link (carrier {} GHz):", ch.carrier_freq / 1e9);
    for r in [0.0, 5_000.0, 20_000.0] {
        let uav = Position3D::new(500.0 + r, 500.0, defaults::UAV_ALTITUDE_M);
        let d = uav.distance(&hap);
        let fspl = free_space_loss(d, &ch);
        let rate = rate_uav_hap(&uav, &hap, &ch, p_uav);
        println!(
            "  slant {:>7.1} km   FSPL {fspl:.3e}   rate {:>7.3} Mbit/s",
            d / 1e3,
            rate / 1e6
        );
    }
}
