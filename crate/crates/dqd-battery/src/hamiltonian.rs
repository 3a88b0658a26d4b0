//! Two-level Hamiltonian of the double dot.
//!
//! H = (ε/2)σ_z + Tc σ_x with detuning ε and tunnel coupling Tc, both in
//! units of the reference rate Γ_R (ħ = k_B = 1). The gap is
//! Δ = √(4Tc² + ε²) with eigenvalues ∓Δ/2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{Herm2, SpectralDecomposition};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitHamiltonian {
    epsilon: f64,
    tc: f64,
}

impl QubitHamiltonian {
    pub fn new(epsilon: f64, tc: f64) -> Result<Self> {
        if !(epsilon.is_finite() && tc.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite Hamiltonian parameters (epsilon={epsilon}, tc={tc})"
            )));
        }
        Ok(Self { epsilon, tc })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn tc(&self) -> f64 {
        self.tc
    }

    /// Gap Δ = √(4Tc² + ε²).
    pub fn delta(&self) -> f64 {
        (4.0 * self.tc * self.tc + self.epsilon * self.epsilon).sqrt()
    }

    /// Eigenvalues (−Δ/2, +Δ/2).
    pub fn eigenvalues(&self) -> (f64, f64) {
        let d = self.delta();
        (-0.5 * d, 0.5 * d)
    }

    /// Bloch direction of the ground state, −(2Tc, 0, ε)/Δ.
    ///
    /// None when Δ = 0 (fully degenerate Hamiltonian).
    pub fn ground_direction(&self) -> Option<[f64; 3]> {
        let d = self.delta();
        if d == 0.0 {
            None
        } else {
            Some([-2.0 * self.tc / d, 0.0, -self.epsilon / d])
        }
    }

    /// Bloch direction of the excited state, +(2Tc, 0, ε)/Δ.
    pub fn excited_direction(&self) -> Option<[f64; 3]> {
        let d = self.delta();
        if d == 0.0 {
            None
        } else {
            Some([2.0 * self.tc / d, 0.0, self.epsilon / d])
        }
    }

    pub fn matrix(&self) -> Herm2 {
        Herm2::new(0.5 * self.epsilon, -0.5 * self.epsilon, Complex64::new(self.tc, 0.0))
    }

    /// Spectral decomposition with ascending eigenvalues.
    pub fn eigensystem(&self) -> SpectralDecomposition {
        SpectralDecomposition::hamiltonian_ascending(&self.matrix())
    }
}
