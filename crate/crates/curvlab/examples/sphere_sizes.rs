//! Prints per-sphere sizes and build time for a preset, for feasibility checks.
//!
//! Usage: cargo run --release --example sphere_sizes -- <preset> <radius>

use std::time::Instant;

use curvlab::cayley::{build_word_metric, BuildOptions};
use curvlab::group::Preset;

fn main() {
    let mut args = std::env::args().skip(1);
    let preset_name = args.next().unwrap_or_else(|| "sgamma".to_string());
    let radius: u32 = args.next().and_then(|r| r.parse().ok()).unwrap_or(6);

    let preset = Preset::parse(&preset_name).expect("unknown preset");
    let (oracle, gens) = preset.oracle_and_gens().expect("preset");

    let start = Instant::now();
    let table =
        build_word_metric(&oracle, &gens, radius, &BuildOptions::default()).expect("build failed");
    let elapsed = start.elapsed();

    println!(
        "preset {preset_name} group {} radius {radius}",
        oracle.spec_str()
    );
    for (n, size) in table.sphere_sizes().iter().enumerate() {
        println!("|S_{n}| = {size}");
    }
    println!("|B_{radius}| = {}", table.element_count());
    println!("built in {elapsed:.2?}");
}
