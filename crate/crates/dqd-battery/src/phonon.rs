//! Ohmic phonon environment.
//!
//! Spectral density ρ(ω) = g ω e^{−ω/ω_c} with dimensionless coupling g and
//! Debye cutoff ω_c. In the weak-coupling Markovian treatment the bath
//! enters the pseudospin generator through three closed-form rates
//! (β = 1/k_B T, all quantities in units of Γ_R):
//!
//!   γ   = g π Tc e^{−Δ/ω_c},
//!   γ_p = (g π / Δ²) [ε²/β + 2Tc²Δ e^{−Δ/ω_c} coth(βΔ/2)],
//!   γ_b = (g π Tc / Δ²) [2ε/β − εΔ e^{−Δ/ω_c} coth(βΔ/2)].
//!
//! γ and γ_p are even in ε, γ_b is odd; all three are linear in g. γ is
//! temperature independent. coth is evaluated as 1 + 2/expm1(βΔ), which is
//! stable from βΔ ≫ 1 down to the series regime βΔ → 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;

/// Coupling beyond which the weak-interaction treatment is questionable.
pub const WEAK_COUPLING_LIMIT: f64 = 0.01;

/// Bath parameters: coupling g, cutoff ω_c, inverse temperature β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhononParams {
    pub g: f64,
    pub omega_c: f64,
    pub beta: f64,
}

impl PhononParams {
    pub fn new(g: f64, omega_c: f64, beta: f64) -> Result<Self> {
        if !(g.is_finite() && omega_c.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidInput("non-finite phonon parameters".into()));
        }
        if g < 0.0 {
            return Err(Error::InvalidInput(format!("coupling g = {g} must be nonnegative")));
        }
        if omega_c <= 0.0 {
            return Err(Error::InvalidInput(format!("cutoff ω_c = {omega_c} must be positive")));
        }
        if beta <= 0.0 {
            return Err(Error::InvalidInput(format!("inverse temperature β = {beta} must be positive")));
        }
        Ok(Self { g, omega_c, beta })
    }

    /// From temperature k_B T instead of β.
    pub fn from_temperature(g: f64, omega_c: f64, temperature: f64) -> Result<Self> {
        if temperature <= 0.0 || !temperature.is_finite() {
            return Err(Error::InvalidInput(format!(
                "temperature k_BT = {temperature} must be positive and finite"
            )));
        }
        Self::new(g, omega_c, 1.0 / temperature)
    }

    /// The rates were derived for g ≪ 1; past this the caller should warn.
    pub fn beyond_weak_coupling(&self) -> bool {
        self.g > WEAK_COUPLING_LIMIT
    }
}

/// The three dephasing rates entering the pseudospin generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhononRates {
    pub gamma: f64,
    pub gamma_p: f64,
    pub gamma_b: f64,
}

impl PhononRates {
    /// Phonon-free environment.
    pub fn zero() -> Self {
        Self { gamma: 0.0, gamma_p: 0.0, gamma_b: 0.0 }
    }
}

/// Ohmic spectral density ρ(ω) = g ω e^{−ω/ω_c}; peaks at ω = ω_c with
/// value g ω_c / e.
pub fn spectral_density(omega: f64, p: &PhononParams) -> Result<f64> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::InvalidInput(format!("frequency ω = {omega} must be finite and ≥ 0")));
    }
    Ok(p.g * omega * (-omega / p.omega_c).exp())
}

/// Dephasing rates for the given system gap. Δ = 0 makes the 1/Δ² factors
/// singular and is rejected.
pub fn dephasing_rates(h: &QubitHamiltonian, p: &PhononParams) -> Result<PhononRates> {
    let delta = h.delta();
    if delta == 0.0 {
        return Err(Error::Domain(
            "dephasing rates divide by Δ²; the degenerate Hamiltonian Δ = 0 is unsupported".into(),
        ));
    }
    let (eps, tc) = (h.epsilon(), h.tc());
    let g_pi = p.g * std::f64::consts::PI;
    let cutoff = (-delta / p.omega_c).exp();
    let coth = coth_half(p.beta * delta);
    let gamma = g_pi * tc * cutoff;
    let gamma_p = g_pi / (delta * delta)
        * (eps * eps / p.beta + 2.0 * tc * tc * delta * cutoff * coth);
    let gamma_b = g_pi * tc / (delta * delta)
        * (2.0 * eps / p.beta - eps * delta * cutoff * coth);
    Ok(PhononRates { gamma, gamma_p, gamma_b })
}

/// coth(x/2) = 1 + 2/(e^x − 1), with a short series below x = 1e-6 where
/// even expm1 loses nothing but the series is exact to f64.
fn coth_half(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 1e-6 {
        2.0 / x + x / 6.0
    } else {
        1.0 + 2.0 / x.exp_m1()
    }
}
