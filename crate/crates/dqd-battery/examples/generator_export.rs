//! Assemble the transport generator stage by stage and export the matrices
//! as labeled JSON for cross-validation with other tools.
//!
//!     cargo run --example generator_export

use dqd_battery::feedback::{solve_control_angles, target_state, Branch, ControlParams};
use dqd_battery::hamiltonian::QubitHamiltonian;
use dqd_battery::liouville::{
    build_jump_left_controlled, build_jump_right, build_liouvillian_free, Liouvillian,
    ReservoirRates,
};
use dqd_battery::phonon::{dephasing_rates, PhononParams, PhononRates};

fn main() -> dqd_battery::Result<()> {
    let h = QubitHamiltonian::new(1.0, 1.0)?;
    let rates = ReservoirRates::new(1.0, 1.0)?;
    let control = solve_control_angles(&target_state(&h, 0.0, Branch::PositiveSx)?)?;
    let phonons = dephasing_rates(&h, &PhononParams::from_temperature(4e-4, 500.0, 1.0)?)?;

    println!("free part L0 (phonons on), row order rho00, nocc, sx, sy, sz:");
    println!("{:.6}", build_liouvillian_free(&h, &rates, &phonons));
    println!("controlled left jump (θ = {:.4}, θ_C = {:.4}):", control.theta, control.theta_c);
    println!("{:.6}", build_jump_left_controlled(&rates, &control));
    println!("right jump:");
    println!("{:.6}", build_jump_right(&rates));

    let gen = Liouvillian::assemble(&h, &rates, &control, &phonons);
    let uncontrolled = Liouvillian::assemble(&h, &rates, &ControlParams::identity(), &PhononRates::zero());

    std::fs::create_dir_all("output")?;
    let json = serde_json::json!({
        "controlled_with_phonons": gen.to_json(),
        "uncontrolled_phonon_free": uncontrolled.to_json(),
    });
    std::fs::write("output/generators.json", serde_json::to_string_pretty(&json).unwrap())?;
    println!("written: output/generators.json");

    // trace preservation: the two population rows cancel column by column
    for j in 0..5 {
        assert_eq!(gen.matrix[(0, j)] + gen.matrix[(1, j)], 0.0);
    }
    println!("column sums of the population rows are exactly zero (trace preserved)");
    Ok(())
}
