//! Transport master equation of the double dot in the pseudospin basis.
//!
//! In the Coulomb-blockade, high-bias regime the dot holds at most one
//! excess electron, so the state lives in a 5-dimensional Liouville space
//! with coordinates {ρ₀₀, n_occ, ⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩}: the empty-state
//! population, the total dot occupation ρ_LL + ρ_RR, and the pseudospin of
//! the conditional qubit (⟨σ_y⟩ = (ρ_LR − ρ_RL)/i).
//!
//! The generator splits as 𝓛 = 𝓛₀ + 𝓙_L^(C) + 𝓙_R:
//!
//! * 𝓛₀ — smooth no-jump evolution: coherent precession about (2Tc, 0, ε),
//!   damping −Γ_R/2 of the occupied sector, and the phonon dephasing rows
//!   (−γ, −γ_p, +γ_b). The −γ entry couples n_occ into the ⟨σ_x⟩ equation;
//!   it is the drive that tilts the stored pseudospin toward the thermal
//!   state.
//! * 𝓙_L^(C) — feedback-conditioned injection from the left lead: each
//!   detected jump is followed by the instantaneous control unitary
//!   exp(−iθ_C n·σ), n = (sinθ, 0, cosθ), so the electron enters with
//!   Bloch vector (sin2θ sin²θ_C, sinθ sin2θ_C, cos²θ + cos2θ_C sin²θ).
//! * 𝓙_R — uncontrolled drain to the right lead, recycling ρ_RR into ρ₀₀.
//!
//! Probability conservation d(ρ₀₀ + n_occ)/dt = 0 holds exactly for the
//! assembled matrix at any parameter values.

use nalgebra::{Matrix5, Vector5};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feedback::ControlParams;
use crate::hamiltonian::QubitHamiltonian;
use crate::phonon::PhononRates;

/// Component labels of the pseudospin basis, in storage order.
pub const COMPONENT_LABELS: [&str; 5] = ["rho00", "nocc", "sx", "sy", "sz"];

/// Tunnel rates to the left and right reservoirs, in units of the
/// reference Γ_R scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirRates {
    pub gamma_l: f64,
    pub gamma_r: f64,
}

impl ReservoirRates {
    pub fn new(gamma_l: f64, gamma_r: f64) -> Result<Self> {
        if !(gamma_l.is_finite() && gamma_r.is_finite()) || gamma_l < 0.0 || gamma_r < 0.0 {
            return Err(Error::InvalidInput(format!(
                "tunnel rates must be finite and nonnegative (got Γ_L={gamma_l}, Γ_R={gamma_r})"
            )));
        }
        Ok(Self { gamma_l, gamma_r })
    }
}

/// State vector {ρ₀₀, n_occ, ⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleVector {
    pub rho00: f64,
    pub n_occ: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl LiouvilleVector {
    /// Validated constructor for initial conditions: trace 1, populations in
    /// [0, 1], and a physical conditional qubit block (|s| ≤ n_occ).
    pub fn new(rho00: f64, n_occ: f64, sx: f64, sy: f64, sz: f64) -> Result<Self> {
        let v = Self { rho00, n_occ, sx, sy, sz };
        v.check_physical(1e-9).map_err(Error::InvalidInput)?;
        Ok(v)
    }

    /// The empty dot, (1, 0, 0, 0, 0).
    pub fn empty() -> Self {
        Self { rho00: 1.0, n_occ: 0.0, sx: 0.0, sy: 0.0, sz: 0.0 }
    }

    /// Fully occupied dot with the given pseudospin direction.
    pub fn occupied(sx: f64, sy: f64, sz: f64) -> Result<Self> {
        Self::new(0.0, 1.0, sx, sy, sz)
    }

    pub fn bloch_norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }

    /// Physicality test with tolerance: trace, population bounds, and the
    /// conditional-state positivity |s|² ≤ n_occ².
    pub fn check_physical(&self, tol: f64) -> std::result::Result<(), String> {
        let vals = [self.rho00, self.n_occ, self.sx, self.sy, self.sz];
        if vals.iter().any(|x| !x.is_finite()) {
            return Err(format!("non-finite components {vals:?}"));
        }
        let trace = self.rho00 + self.n_occ;
        if (trace - 1.0).abs() > tol {
            return Err(format!("trace {trace} deviates from 1 beyond {tol}"));
        }
        if self.rho00 < -tol || self.rho00 > 1.0 + tol || self.n_occ < -tol || self.n_occ > 1.0 + tol
        {
            return Err(format!("populations out of range: rho00={}, n_occ={}", self.rho00, self.n_occ));
        }
        let s2 = self.sx * self.sx + self.sy * self.sy + self.sz * self.sz;
        if s2 > self.n_occ * self.n_occ + tol {
            return Err(format!(
                "conditional qubit block unphysical: |s|²={} > n_occ²={}",
                s2,
                self.n_occ * self.n_occ
            ));
        }
        Ok(())
    }

    pub fn as_vector(&self) -> Vector5<f64> {
        Vector5::new(self.rho00, self.n_occ, self.sx, self.sy, self.sz)
    }

    pub fn from_vector(v: &Vector5<f64>) -> Self {
        Self { rho00: v[0], n_occ: v[1], sx: v[2], sy: v[3], sz: v[4] }
    }
}

/// Free (no-jump) part 𝓛₀, including phonon dephasing rows.
///
/// Pass `PhononRates::zero()` for a phonon-free generator.
pub fn build_liouvillian_free(
    h: &QubitHamiltonian,
    rates: &ReservoirRates,
    ph: &PhononRates,
) -> Matrix5<f64> {
    let (eps, tc) = (h.epsilon(), h.tc());
    let (gl, gr) = (rates.gamma_l, rates.gamma_r);
    let mut m = Matrix5::zeros();
    m[(0, 0)] = -gl;
    m[(1, 1)] = -0.5 * gr;
    m[(1, 4)] = 0.5 * gr;
    m[(2, 1)] = -ph.gamma;
    m[(2, 2)] = -0.5 * gr - ph.gamma_p;
    m[(2, 3)] = eps;
    m[(2, 4)] = ph.gamma_b;
    m[(3, 2)] = -eps;
    m[(3, 3)] = -0.5 * gr - ph.gamma_p;
    m[(3, 4)] = 2.0 * tc;
    m[(4, 1)] = 0.5 * gr;
    m[(4, 3)] = -2.0 * tc;
    m[(4, 4)] = -0.5 * gr;
    m
}

/// Feedback-conditioned left jump 𝓙_L^(C): only the ρ₀₀ column is nonzero,
/// and the injected Bloch vector is the control image of |L⟩.
pub fn build_jump_left_controlled(rates: &ReservoirRates, ctrl: &ControlParams) -> Matrix5<f64> {
    let gl = rates.gamma_l;
    let (theta, theta_c) = (ctrl.theta, ctrl.theta_c);
    let mut m = Matrix5::zeros();
    m[(1, 0)] = gl;
    m[(2, 0)] = gl * (2.0 * theta).sin() * theta_c.sin().powi(2);
    m[(3, 0)] = gl * theta.sin() * (2.0 * theta_c).sin();
    m[(4, 0)] = gl * (theta.cos().powi(2) + (2.0 * theta_c).cos() * theta.sin().powi(2));
    m
}

/// Right jump 𝓙_R: recycles the right-dot population ρ_RR = (n_occ − ⟨σ_z⟩)/2
/// into the empty state.
pub fn build_jump_right(rates: &ReservoirRates) -> Matrix5<f64> {
    let gr = rates.gamma_r;
    let mut m = Matrix5::zeros();
    m[(0, 1)] = 0.5 * gr;
    m[(0, 4)] = -0.5 * gr;
    m
}

/// Assembled generator 𝓛 = 𝓛₀ + 𝓙_L^(C) + 𝓙_R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Liouvillian {
    pub matrix: Matrix5<f64>,
}

impl Liouvillian {
    pub fn assemble(
        h: &QubitHamiltonian,
        rates: &ReservoirRates,
        ctrl: &ControlParams,
        ph: &PhononRates,
    ) -> Self {
        let m = build_liouvillian_free(h, rates, ph)
            + build_jump_left_controlled(rates, ctrl)
            + build_jump_right(rates);
        Self { matrix: m }
    }

    /// d v / dt.
    pub fn apply(&self, v: &Vector5<f64>) -> Vector5<f64> {
        self.matrix * v
    }

    /// ‖𝓛 v‖₂, the stationarity residual.
    pub fn residual(&self, v: &LiouvilleVector) -> f64 {
        (self.matrix * v.as_vector()).norm()
    }

    /// JSON export: row-major 5×5 with the pseudospin component labels for
    /// rows and columns.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| self.matrix[(i, j)]).collect())
            .collect();
        serde_json::json!({
            "labels": COMPONENT_LABELS,
            "matrix": rows,
        })
    }
}
