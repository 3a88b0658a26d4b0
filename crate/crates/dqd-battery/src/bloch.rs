//! Qubit states as Bloch vectors.
//!
//! A two-level state is stored by its Cartesian Pauli expectation values
//! (⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩); the spherical coordinates (r, θ, φ) are a view:
//!
//!   ⟨σ_x⟩ = r sinθ cosφ,  ⟨σ_y⟩ = r sinθ sinφ,  ⟨σ_z⟩ = r cosθ.
//!
//! The reconstructed density matrix is ρ = ½(1 + ⟨σ_z⟩)|↑⟩⟨↑| + ... with
//! off-diagonal ρ_↑↓ = (⟨σ_x⟩ + i⟨σ_y⟩)/2. The y component follows the
//! pseudospin convention ⟨σ_y⟩ = (ρ_↑↓ − ρ_↓↑)/i used throughout the
//! transport module, so Bloch vectors move between both modules unchanged.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::Herm2;

/// Validation slack on the Bloch norm: anything in (1, 1 + R_SLACK] is
/// treated as roundoff and rescaled onto the sphere.
pub const R_SLACK: f64 = 1e-12;

/// A qubit state on or inside the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochState {
    sx: f64,
    sy: f64,
    sz: f64,
}

impl BlochState {
    /// Build from Cartesian Pauli expectation values.
    ///
    /// Rejects non-finite components and norms beyond 1 + 1e-12; norms in
    /// (1, 1 + 1e-12] are rescaled to exactly 1.
    pub fn from_cartesian(sx: f64, sy: f64, sz: f64) -> Result<Self> {
        if !(sx.is_finite() && sy.is_finite() && sz.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite Bloch components ({sx}, {sy}, {sz})"
            )));
        }
        let r = (sx * sx + sy * sy + sz * sz).sqrt();
        if r > 1.0 + R_SLACK {
            return Err(Error::InvalidInput(format!(
                "Bloch norm {r} exceeds 1 (density matrix would not be positive)"
            )));
        }
        if r > 1.0 {
            let scale = 1.0 / r;
            return Ok(Self { sx: sx * scale, sy: sy * scale, sz: sz * scale });
        }
        Ok(Self { sx, sy, sz })
    }

    /// Build from spherical coordinates (r, θ, φ).
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite spherical coordinates ({r}, {theta}, {phi})"
            )));
        }
        if r < 0.0 {
            return Err(Error::InvalidInput(format!("negative Bloch norm {r}")));
        }
        if r > 1.0 + R_SLACK {
            return Err(Error::InvalidInput(format!("Bloch norm {r} exceeds 1")));
        }
        let r = r.min(1.0);
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Ok(Self { sx: r * st * cp, sy: r * st * sp, sz: r * ct })
    }

    /// The maximally mixed state, r = 0.
    pub fn maximally_mixed() -> Self {
        Self { sx: 0.0, sy: 0.0, sz: 0.0 }
    }

    /// Pure state along a given direction (the direction is normalized).
    pub fn pure_along(dir: [f64; 3]) -> Result<Self> {
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidInput("direction must be finite and nonzero".into()));
        }
        Ok(Self { sx: dir[0] / n, sy: dir[1] / n, sz: dir[2] / n })
    }

    pub fn sx(&self) -> f64 {
        self.sx
    }

    pub fn sy(&self) -> f64 {
        self.sy
    }

    pub fn sz(&self) -> f64 {
        self.sz
    }

    /// Bloch-vector norm r ∈ [0, 1].
    pub fn r(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt().min(1.0)
    }

    /// Polar angle θ ∈ [0, π]; 0 for the maximally mixed state.
    pub fn theta(&self) -> f64 {
        let r = self.r();
        if r == 0.0 {
            0.0
        } else {
            (self.sz / r).clamp(-1.0, 1.0).acos()
        }
    }

    /// Azimuthal angle φ ∈ (−π, π]; 0 when the transverse part vanishes.
    pub fn phi(&self) -> f64 {
        if self.sx == 0.0 && self.sy == 0.0 {
            0.0
        } else {
            self.sy.atan2(self.sx)
        }
    }

    /// Density matrix ρ = ½(I + s·σ).
    pub fn density_matrix(&self) -> Herm2 {
        Herm2::new(
            0.5 * (1.0 + self.sz),
            0.5 * (1.0 - self.sz),
            Complex64::new(0.5 * self.sx, 0.5 * self.sy),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn rejects_unphysical_norm() {
        assert!(BlochState::from_cartesian(1.0, 0.0, 0.1).is_err());
        assert!(BlochState::from_spherical(1.1, 0.0, 0.0).is_err());
        assert!(BlochState::from_cartesian(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn clamps_roundoff_norm_onto_sphere() {
        let s = BlochState::from_cartesian(1.0 + 5e-13, 0.0, 0.0).unwrap();
        assert!(s.r() <= 1.0);
        assert_abs_diff_eq!(s.r(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn density_matrix_has_unit_trace_and_physical_eigenvalues() {
        let s = BlochState::from_spherical(0.7, 1.1, 0.3).unwrap();
        let rho = s.density_matrix();
        assert_abs_diff_eq!(rho.trace(), 1.0, epsilon = 1e-15);
        let (vals, _) = rho.eigen_ascending();
        assert_abs_diff_eq!(vals[0], 0.5 * (1.0 - 0.7), epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 0.5 * (1.0 + 0.7), epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn spherical_cartesian_round_trip(
            r in 0.0..1.0f64,
            theta in 0.0..std::f64::consts::PI,
            phi in 0.0..std::f64::consts::TAU,
        ) {
            let s = BlochState::from_spherical(r, theta, phi).unwrap();
            prop_assert!((s.r() - r).abs() < 1e-12);
            let back = BlochState::from_spherical(s.r(), s.theta(), s.phi()).unwrap();
            prop_assert!((back.sx() - s.sx()).abs() < 1e-12);
            prop_assert!((back.sy() - s.sy()).abs() < 1e-12);
            prop_assert!((back.sz() - s.sz()).abs() < 1e-12);
        }
    }
}
