//! Stationary states of the transport generator: null-space extraction
//! against the closed-form controlled mixture, and the degenerate Γ_R = 0
//! case resolved by projecting the initial condition.
//!
//!     cargo run --example steady_states

use dqd_battery::feedback::{
    solve_control_angles, steady_state, steady_state_formula, target_state, Branch, ControlParams,
};
use dqd_battery::hamiltonian::QubitHamiltonian;
use dqd_battery::liouville::{Liouvillian, LiouvilleVector, ReservoirRates};
use dqd_battery::phonon::PhononRates;

fn main() -> dqd_battery::Result<()> {
    let h = QubitHamiltonian::new(1.0, 1.0)?;

    // uncontrolled transport
    let gen = Liouvillian::assemble(
        &h,
        &ReservoirRates::new(1.0, 1.0)?,
        &ControlParams::identity(),
        &PhononRates::zero(),
    );
    let ss = steady_state(&gen, None)?;
    println!("uncontrolled steady state at Γ_L = Γ_R = 1 (exact value: (4,13,8,4,5)/17):");
    print_state(&ss.state, ss.residual);

    // controlled: numeric null space vs the (Γ_R^j empty + Γ_L target) mixture
    println!();
    println!("controlled steady states against the closed-form mixture:");
    for gamma_r in [1.0, 0.5, 0.1] {
        let target = target_state(&h, gamma_r, Branch::PositiveSx)?;
        let ctrl = solve_control_angles(&target)?;
        let gen = Liouvillian::assemble(
            &h,
            &ReservoirRates::new(1.0, gamma_r)?,
            &ctrl,
            &PhononRates::zero(),
        );
        let numeric = steady_state(&gen, None)?;
        let formula = steady_state_formula(&h, 1.0, gamma_r, Branch::PositiveSx)?;
        let diff = (numeric.state.as_vector() - formula.as_vector()).norm();
        println!("  Γ_R = {gamma_r}: ‖null-space − formula‖ = {diff:.2e}");
        print_state(&numeric.state, numeric.residual);
    }

    // Γ_R = 0: the kernel is two-dimensional; the long-time state from the
    // empty dot is the pure maximum-ergotropy target
    println!();
    let target = target_state(&h, 0.0, Branch::PositiveSx)?;
    let ctrl = solve_control_angles(&target)?;
    let gen = Liouvillian::assemble(&h, &ReservoirRates::new(1.0, 0.0)?, &ctrl, &PhononRates::zero());
    match steady_state(&gen, None) {
        Err(e) => println!("Γ_R = 0 without an initial condition: {e}"),
        Ok(_) => unreachable!("kernel is degenerate"),
    }
    let ss = steady_state(&gen, Some(&LiouvilleVector::empty()))?;
    println!("Γ_R = 0, projected from the empty state (expected (0, 1, 2/√5, 0, 1/√5)):");
    print_state(&ss.state, ss.residual);
    Ok(())
}

fn print_state(v: &LiouvilleVector, residual: f64) {
    println!(
        "    (ρ00, n_occ, sx, sy, sz) = ({:.6}, {:.6}, {:.6}, {:.6}, {:.6}), ‖𝓛v‖ = {residual:.2e}",
        v.rho00, v.n_occ, v.sx, v.sy, v.sz
    );
}
