//! Self-discharge against the phonon bath: dephasing rates, then a fast
//! feedback charge followed by decoupled storage at three temperatures.
//!
//!     cargo run --release --example self_discharge

use std::fs::File;

use dqd_battery::feedback::{solve_control_angles, target_state, Branch};
use dqd_battery::hamiltonian::QubitHamiltonian;
use dqd_battery::integrator::IntegratorParams;
use dqd_battery::liouville::LiouvilleVector;
use dqd_battery::phonon::{dephasing_rates, spectral_density, PhononParams};
use dqd_battery::protocol::{run_protocol, ProtocolSchedule};
use dqd_battery::report::write_trajectory_csv;

fn main() -> dqd_battery::Result<()> {
    let h = QubitHamiltonian::new(1.0, 1.0)?;
    let control = solve_control_angles(&target_state(&h, 0.0, Branch::PositiveSx)?)?;

    println!("ohmic bath, g = 4e-4, ω_c = 500 (units of Γ_R)");
    let p = PhononParams::from_temperature(4e-4, 500.0, 1.0)?;
    println!(
        "spectral density peaks at ω = ω_c: ρ(ω_c) = {:.6}",
        spectral_density(500.0, &p)?
    );
    println!();
    println!("{:>6} {:>14} {:>14} {:>14}", "k_BT", "γ", "γ_p", "γ_b");
    for kt in [0.5, 1.0, 2.0] {
        let r = dephasing_rates(&h, &PhononParams::from_temperature(4e-4, 500.0, kt)?)?;
        println!("{kt:>6} {:>14.6e} {:>14.6e} {:>14.6e}", r.gamma, r.gamma_p, r.gamma_b);
    }
    println!();

    std::fs::create_dir_all("output")?;
    let params = IntegratorParams { dt: 1e-3, record_stride: 500 };
    println!("{:>6} {:>12} {:>14} {:>14}", "k_BT", "peak W", "W(+150)", "W(+300)");
    for kt in [0.5, 1.0, 2.0] {
        let phonons = PhononParams::from_temperature(4e-4, 500.0, kt)?;
        let schedule = ProtocolSchedule::feedback_charge(1.0, 60.0, 300.0, true)?;
        let traj = run_protocol(&h, &schedule, &control, Some(&phonons), &params, &LiouvilleVector::empty())?;
        let path = format!("output/self_discharge_kT{kt}.csv");
        write_trajectory_csv(&mut File::create(&path)?, &traj)?;
        let peak = traj.peak_ergotropy().unwrap().ergotropy;
        let at = |t: f64| {
            traj.samples
                .iter()
                .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
                .unwrap()
                .ergotropy
        };
        println!("{kt:>6} {peak:>12.6} {:>14.6} {:>14.6}   -> {path}", at(210.0), at(360.0));
    }
    println!();
    println!("hotter baths charge less and discharge faster; without phonons the stored");
    println!("ergotropy would stay at Δ = {:.6} indefinitely.", h.delta());
    Ok(())
}
