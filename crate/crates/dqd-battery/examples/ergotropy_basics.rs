//! Ergotropy of a two-level system: the spectral double sum against the
//! Bloch closed form, passive states, and the maximum.
//!
//!     cargo run --example ergotropy_basics

use dqd_battery::bloch::BlochState;
use dqd_battery::ergotropy::{
    ergotropy_closed_form, ergotropy_nc, ergotropy_nc_max, ergotropy_spectral, max_ergotropy,
    passive_state,
};
use dqd_battery::hamiltonian::QubitHamiltonian;

fn main() -> dqd_battery::Result<()> {
    let h = QubitHamiltonian::new(1.0, 1.0)?;
    println!("H = (ε/2)σz + Tc σx with ε = Tc = 1, gap Δ = {}", h.delta());
    println!();

    let states = [
        ("excited pole   (r=1, θ=0)", BlochState::from_spherical(1.0, 0.0, 0.0)?),
        ("equatorial mix (r=0.5, θ=π/2, φ=π)", BlochState::from_spherical(0.5, std::f64::consts::FRAC_PI_2, std::f64::consts::PI)?),
        ("maximally mixed (r=0)", BlochState::maximally_mixed()),
    ];
    println!("{:<38} {:>12} {:>12}", "state", "spectral", "closed form");
    for (name, s) in &states {
        println!(
            "{:<38} {:>12.8} {:>12.8}",
            name,
            ergotropy_spectral(s, &h),
            ergotropy_closed_form(s, &h)
        );
    }
    println!();

    let (wmax, maximizer) = max_ergotropy(&h);
    println!(
        "maximum W = Δ = {wmax:.8} at (sx, sy, sz) = ({:.6}, {:.6}, {:.6})",
        maximizer.sx(),
        maximizer.sy(),
        maximizer.sz()
    );
    println!(
        "no-coherence column: W_nc(r=1) = {:.8}, W_nc,max = {:.8}",
        ergotropy_nc(1.0, &h)?,
        ergotropy_nc_max(&h)
    );
    println!();

    let s = BlochState::from_spherical(0.7, 1.1, 0.3)?;
    let p = passive_state(&s, &h);
    println!(
        "passive state of (r=0.7, θ=1.1, φ=0.3): (sx, sy, sz) = ({:.6}, {:.6}, {:.6})",
        p.sx(),
        p.sy(),
        p.sz()
    );
    println!(
        "  norm preserved: {:.6}, residual ergotropy {:.2e}",
        p.r(),
        ergotropy_spectral(&p, &h)
    );
    Ok(())
}
