//! Discharge-time systematics: sweep the detuning and the tunnel coupling,
//! fit the decay of log W over its first decade, and export the curves.
//!
//!     cargo run --release --example parameter_sweeps

use std::fs::File;

use dqd_battery::report::{write_sweep_curves_csv, write_sweep_summary_csv};
use dqd_battery::sweep::{self_discharge_sweep, SweepAxis, SweepBase, SweepParams};

fn main() -> dqd_battery::Result<()> {
    let base = SweepBase::default(); // ε = Tc = Γ_L = Γ_R = 1, g = 4e-4, ω_c = 500, k_BT = 1
    let params = SweepParams::default();
    std::fs::create_dir_all("output")?;

    let eps_points = self_discharge_sweep(&base, SweepAxis::Epsilon, &[1.0, 2.0, 4.0, 8.0], &params, None)?;
    let tc_points = self_discharge_sweep(&base, SweepAxis::Tc, &[1.0, 0.5, 0.25], &params, None)?;

    let mut all = eps_points.clone();
    all.extend(tc_points.iter().cloned());
    write_sweep_summary_csv(&mut File::create("output/sweep_summary.csv")?, &all)?;
    write_sweep_curves_csv(&mut File::create("output/sweep_curves.csv")?, &all)?;
    println!("written: output/sweep_summary.csv, output/sweep_curves.csv");
    println!();

    println!("{:<12} {:>8} {:>14} {:>12}", "axis", "value", "peak W", "decay time");
    for p in &all {
        println!(
            "{:<12} {:>8} {:>14.6} {:>12.1}",
            p.axis.name(),
            p.value,
            p.peak_ergotropy,
            p.decay_time
        );
    }
    println!();
    println!("large ε/Tc stores longest: the pseudospin sits near the z axis where the");
    println!("bath rows barely touch it, at the price of little stored coherence.");
    Ok(())
}
