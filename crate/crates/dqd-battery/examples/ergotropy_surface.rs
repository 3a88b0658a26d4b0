//! Ergotropy over the whole Bloch sphere on a (θ, φ) grid, exported as CSV.
//!
//!     cargo run --example ergotropy_surface

use std::fs::File;

use dqd_battery::ergotropy::ergotropy_surface;
use dqd_battery::hamiltonian::QubitHamiltonian;
use dqd_battery::report::write_surface_csv;

fn main() -> dqd_battery::Result<()> {
    let h = QubitHamiltonian::new(1.0, 1.0)?;
    let surface = ergotropy_surface(&h, 1.0, 181, 361)?;

    std::fs::create_dir_all("output")?;
    let path = "output/ergotropy_surface.csv";
    write_surface_csv(&mut File::create(path)?, &surface)?;

    let max = surface.max_point();
    let min = surface.min_point();
    println!("grid:     181 × 361 at r = 1, ε = Tc = 1");
    println!("written:  {path}");
    println!("max W = {:.8} at (θ, φ) = ({:.4}, {:.4})", max.ergotropy, max.theta, max.phi);
    println!("min W = {:.2e} at (θ, φ) = ({:.4}, {:.4})", min.ergotropy, min.theta, min.phi);
    println!("analytic maximum Δ = {:.8} at θ = atan(2Tc/ε) = {:.4}, φ = 0", h.delta(), (2.0f64).atan());
    Ok(())
}
