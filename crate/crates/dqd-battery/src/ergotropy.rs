//! Ergotropy of a two-level system.
//!
//! Ergotropy is the maximum work extractable from a state by cyclic unitary
//! driving: 𝒲 = tr(ρH) − tr(ρ_passive H), where the passive state carries
//! the eigenvalues of ρ in decreasing order on the eigenstates of H in
//! increasing order. Two routes are implemented and kept independent:
//!
//! * the spectral double sum
//!     𝒲 = Σ_{j,k} ρ_j ε_k (|⟨ρ_j|ε_k⟩|² − δ_{jk}),
//!   evaluated from explicit eigendecompositions of ρ and H;
//! * the closed form in Bloch coordinates
//!     𝒲 = ½ (rΔ + ε⟨σ_z⟩ + 2Tc⟨σ_x⟩),
//!   which the double sum reduces to for a qubit.
//!
//! The closed form makes the maximizer obvious: r = 1 and the Bloch vector
//! along (2Tc, 0, ε)/Δ, where 𝒲 = Δ.

use crate::bloch::BlochState;
use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::spectral::{overlap2, SpectralDecomposition};

/// Ergotropy by the spectral double sum over eigendecompositions of ρ and H.
pub fn ergotropy_spectral(state: &BlochState, h: &QubitHamiltonian) -> f64 {
    let rho = SpectralDecomposition::state_descending(&state.density_matrix());
    let ham = SpectralDecomposition::hamiltonian_ascending(&h.matrix());
    let mut w = 0.0;
    for j in 0..2 {
        for k in 0..2 {
            let delta_jk = if j == k { 1.0 } else { 0.0 };
            w += rho.values[j] * ham.values[k] * (overlap2(&rho.kets[j], &ham.kets[k]) - delta_jk);
        }
    }
    w
}

/// Ergotropy in closed form, ½(rΔ + ε⟨σ_z⟩ + 2Tc⟨σ_x⟩).
pub fn ergotropy_closed_form(state: &BlochState, h: &QubitHamiltonian) -> f64 {
    0.5 * (state.r() * h.delta() + h.epsilon() * state.sz() + 2.0 * h.tc() * state.sx())
}

/// The passive state: eigenvalues of ρ in decreasing order on the
/// eigenstates of H in increasing order. Its Bloch vector is r times the
/// ground direction; for a degenerate Hamiltonian (or r = 0) every
/// arrangement is passive and the input is returned unchanged.
pub fn passive_state(state: &BlochState, h: &QubitHamiltonian) -> BlochState {
    match h.ground_direction() {
        None => *state,
        Some(g) => {
            let r = state.r();
            BlochState::from_cartesian(r * g[0], r * g[1], r * g[2])
                .expect("scaled unit direction is a valid Bloch vector")
        }
    }
}

/// Maximum ergotropy over all states, 𝒲_max = Δ, together with the
/// maximizing Bloch vector (2Tc/Δ, 0, ε/Δ).
pub fn max_ergotropy(h: &QubitHamiltonian) -> (f64, BlochState) {
    let maximizer = match h.excited_direction() {
        Some(e) => BlochState::from_cartesian(e[0], e[1], e[2])
            .expect("unit direction is a valid Bloch vector"),
        // Δ = 0: every state is passive and any maximizer is as good as
        // another; report the mixed state.
        None => BlochState::maximally_mixed(),
    };
    (h.delta(), maximizer)
}

/// Ergotropy of a state with no coherence in the dot basis (θ = 0):
/// 𝒲_nc = ½ r (Δ + ε).
pub fn ergotropy_nc(r: f64, h: &QubitHamiltonian) -> Result<f64> {
    if !(0.0..=1.0 + crate::bloch::R_SLACK).contains(&r) {
        return Err(Error::InvalidInput(format!("Bloch norm {r} outside [0, 1]")));
    }
    Ok(0.5 * r.min(1.0) * (h.delta() + h.epsilon()))
}

/// Maximum of the no-coherence ergotropy, ½(Δ + ε) at r = 1.
pub fn ergotropy_nc_max(h: &QubitHamiltonian) -> f64 {
    0.5 * (h.delta() + h.epsilon())
}

/// One grid cell of an ergotropy surface.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SurfacePoint {
    pub theta: f64,
    pub phi: f64,
    pub ergotropy: f64,
}

/// Ergotropy sampled on a regular (θ, φ) grid at fixed Bloch norm r.
#[derive(Debug, Clone)]
pub struct ErgotropySurface {
    pub r: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    /// Row-major over θ then φ: index = i_theta * n_phi + i_phi.
    pub points: Vec<SurfacePoint>,
}

/// Sample the closed-form ergotropy on an inclusive regular grid
/// θ ∈ [0, π], φ ∈ [0, 2π].
pub fn ergotropy_surface(
    h: &QubitHamiltonian,
    r: f64,
    n_theta: usize,
    n_phi: usize,
) -> Result<ErgotropySurface> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::InvalidInput(format!(
            "surface grid needs at least 2 points per axis (got {n_theta}×{n_phi})"
        )));
    }
    let probe = BlochState::from_spherical(r, 0.0, 0.0)?;
    let r = probe.r();
    let dtheta = std::f64::consts::PI / (n_theta - 1) as f64;
    let dphi = std::f64::consts::TAU / (n_phi - 1) as f64;
    let mut points = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = i as f64 * dtheta;
        for j in 0..n_phi {
            let phi = j as f64 * dphi;
            let s = BlochState::from_spherical(r, theta, phi)?;
            points.push(SurfacePoint { theta, phi, ergotropy: ergotropy_closed_form(&s, h) });
        }
    }
    Ok(ErgotropySurface { r, n_theta, n_phi, points })
}

impl ErgotropySurface {
    pub fn max_point(&self) -> &SurfacePoint {
        self.points
            .iter()
            .max_by(|a, b| a.ergotropy.total_cmp(&b.ergotropy))
            .expect("surface has at least four points")
    }

    pub fn min_point(&self) -> &SurfacePoint {
        self.points
            .iter()
            .min_by(|a, b| a.ergotropy.total_cmp(&b.ergotropy))
            .expect("surface has at least four points")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};

    const SQRT5: f64 = 2.236067977499789696;

    fn h11() -> QubitHamiltonian {
        QubitHamiltonian::new(1.0, 1.0).unwrap()
    }

    fn random_pair(rng: &mut impl Rng) -> (BlochState, QubitHamiltonian) {
        let s = BlochState::from_spherical(
            rng.random_range(0.0..=1.0),
            rng.random_range(0.0..PI),
            rng.random_range(0.0..std::f64::consts::TAU),
        )
        .unwrap();
        let h =
            QubitHamiltonian::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)).unwrap();
        (s, h)
    }

    #[test]
    fn mixed_state_is_passive() {
        let w = ergotropy_spectral(&BlochState::maximally_mixed(), &h11());
        assert_abs_diff_eq!(w, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ground_state_is_passive() {
        // r = 1 aligned with the ground eigenvector: cosθ = −ε/Δ,
        // sinθ cosφ = −2Tc/Δ, sinφ = 0.
        let h = h11();
        let g = h.ground_direction().unwrap();
        let s = BlochState::from_cartesian(g[0], g[1], g[2]).unwrap();
        assert_abs_diff_eq!(ergotropy_spectral(&s, &h), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn excited_pole_values() {
        // r=1, θ=0: W = (Δ+ε)/2 = (√5+1)/2 for ε = Tc = 1.
        let s = BlochState::from_spherical(1.0, 0.0, 0.0).unwrap();
        let expect = 0.5 * (SQRT5 + 1.0);
        assert_abs_diff_eq!(ergotropy_spectral(&s, &h11()), expect, epsilon = 1e-12);
        assert_abs_diff_eq!(ergotropy_closed_form(&s, &h11()), expect, epsilon = 1e-15);
    }

    #[test]
    fn equatorial_mixed_state_value() {
        // r=0.5, θ=π/2, φ=π: W = ½(0.5√5 − 1) ≈ 0.059016994374947424
        // (cross-checked against the spectral double sum).
        let s = BlochState::from_spherical(0.5, FRAC_PI_2, PI).unwrap();
        let w = ergotropy_closed_form(&s, &h11());
        assert_abs_diff_eq!(w, 0.059016994374947424, epsilon = 1e-14);
        assert_abs_diff_eq!(w, ergotropy_spectral(&s, &h11()), epsilon = 1e-12);
    }

    #[test]
    fn maximizer_state_value_is_delta() {
        // r=1, tanθ = 2Tc/ε, φ=0 gives 𝒲 = Δ = √5.
        let h = h11();
        let theta = (2.0 * h.tc() / h.epsilon()).atan();
        let s = BlochState::from_spherical(1.0, theta, 0.0).unwrap();
        assert_abs_diff_eq!(ergotropy_closed_form(&s, &h), SQRT5, epsilon = 1e-14);
    }

    #[test]
    fn max_ergotropy_values_and_coordinates() {
        let (w, s) = max_ergotropy(&h11());
        assert_abs_diff_eq!(w, SQRT5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.sx(), 2.0 / SQRT5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.sy(), 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(s.sz(), 1.0 / SQRT5, epsilon = 1e-15);

        let (w, _) = max_ergotropy(&QubitHamiltonian::new(1.0, 0.0).unwrap());
        assert_abs_diff_eq!(w, 1.0, epsilon = 0.0);
        let (w, _) = max_ergotropy(&QubitHamiltonian::new(0.0, 1.0).unwrap());
        assert_abs_diff_eq!(w, 2.0, epsilon = 0.0);
    }

    #[test]
    fn max_ergotropy_gradient_vanishes_at_maximizer() {
        // central finite differences in (θ, φ) at r = 1
        let h = h11();
        let theta0 = (2.0 * h.tc() / h.epsilon()).atan();
        let step = 1e-6;
        let f = |theta: f64, phi: f64| {
            ergotropy_closed_form(&BlochState::from_spherical(1.0, theta, phi).unwrap(), &h)
        };
        let dtheta = (f(theta0 + step, 0.0) - f(theta0 - step, 0.0)) / (2.0 * step);
        let dphi = (f(theta0, step) - f(theta0, -step)) / (2.0 * step);
        assert_abs_diff_eq!(dtheta, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(dphi, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn no_coherence_values() {
        let h = h11();
        assert_abs_diff_eq!(ergotropy_nc(1.0, &h).unwrap(), 0.5 * (SQRT5 + 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(ergotropy_nc(0.0, &h).unwrap(), 0.0, epsilon = 0.0);
        // Δ = √(16+9) = 5: ½·0.5·(5+3) = 2, equal to the closed form at θ=0.
        let h2 = QubitHamiltonian::new(3.0, 2.0).unwrap();
        assert_abs_diff_eq!(ergotropy_nc(0.5, &h2).unwrap(), 2.0, epsilon = 1e-15);
        let pole = BlochState::from_spherical(0.5, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(ergotropy_closed_form(&pole, &h2), 2.0, epsilon = 1e-15);
        assert!(ergotropy_nc(1.5, &h).is_err());
    }

    #[test]
    fn maximizer_hierarchy() {
        // 𝒲_max = Δ ≥ 𝒲_nc,max = (Δ+ε)/2 for ε ≥ 0, equality iff Tc = 0.
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let h = QubitHamiltonian::new(rng.random_range(0.0..3.0), rng.random_range(-3.0..3.0))
                .unwrap();
            let (wmax, _) = max_ergotropy(&h);
            assert!(wmax >= ergotropy_nc_max(&h) - 1e-12);
        }
        let h = QubitHamiltonian::new(2.0, 0.0).unwrap();
        assert_abs_diff_eq!(max_ergotropy(&h).0, ergotropy_nc_max(&h), epsilon = 1e-15);
    }

    #[test]
    fn spectral_equals_closed_form_on_random_inputs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..10_000 {
            let (s, h) = random_pair(&mut rng);
            let a = ergotropy_spectral(&s, &h);
            let b = ergotropy_closed_form(&s, &h);
            assert!(
                (a - b).abs() <= 1e-10 * h.delta().max(1.0),
                "spectral {a} vs closed {b} at eps={} tc={}",
                h.epsilon(),
                h.tc()
            );
            // non-negativity and the rΔ upper bound
            assert!(a >= -1e-12);
            assert!(b <= s.r() * h.delta() + 1e-12);
        }
    }

    #[test]
    fn passive_state_has_zero_ergotropy_and_same_norm() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..2_000 {
            let (s, h) = random_pair(&mut rng);
            let p = passive_state(&s, &h);
            assert!((p.r() - s.r()).abs() < 1e-12);
            assert!(ergotropy_spectral(&p, &h) <= 1e-12);
        }
        // the named case: r=0.7, θ=1.1, φ=0.3 with ε=2, Tc=0.5
        let s = BlochState::from_spherical(0.7, 1.1, 0.3).unwrap();
        let h = QubitHamiltonian::new(2.0, 0.5).unwrap();
        let p = passive_state(&s, &h);
        assert_abs_diff_eq!(p.r(), 0.7, epsilon = 1e-14);
        assert!(ergotropy_spectral(&p, &h).abs() <= 1e-12);
        // rank-1 passive state is the ground state
        let pure = BlochState::from_spherical(1.0, 0.0, 0.0).unwrap();
        let g = h11().ground_direction().unwrap();
        let p = passive_state(&pure, &h11());
        assert_abs_diff_eq!(p.sx(), g[0], epsilon = 1e-15);
        assert_abs_diff_eq!(p.sz(), g[2], epsilon = 1e-15);
    }

    #[test]
    fn ergotropy_depends_only_on_r_and_energy_projection() {
        // Rotating the state about the Hamiltonian axis (2Tc, 0, ε)/Δ keeps
        // both r and ε⟨σz⟩ + 2Tc⟨σx⟩ fixed, so 𝒲 must not change.
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        for _ in 0..500 {
            let (s, h) = random_pair(&mut rng);
            if h.delta() == 0.0 {
                continue;
            }
            let e = h.excited_direction().unwrap();
            let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (sa, ca) = angle.sin_cos();
            let v = [s.sx(), s.sy(), s.sz()];
            let dot = v[0] * e[0] + v[1] * e[1] + v[2] * e[2];
            let cross = [
                e[1] * v[2] - e[2] * v[1],
                e[2] * v[0] - e[0] * v[2],
                e[0] * v[1] - e[1] * v[0],
            ];
            let rot = [
                v[0] * ca + cross[0] * sa + e[0] * dot * (1.0 - ca),
                v[1] * ca + cross[1] * sa + e[1] * dot * (1.0 - ca),
                v[2] * ca + cross[2] * sa + e[2] * dot * (1.0 - ca),
            ];
            let s2 = BlochState::from_cartesian(rot[0], rot[1], rot[2]).unwrap();
            let w1 = ergotropy_spectral(&s, &h);
            let w2 = ergotropy_spectral(&s2, &h);
            assert!((w1 - w2).abs() < 1e-10, "rotation about H axis changed W: {w1} vs {w2}");
        }
    }

    #[test]
    fn surface_grid_statistics() {
        let h = h11();
        let surf = ergotropy_surface(&h, 1.0, 181, 361).unwrap();
        assert_eq!(surf.points.len(), 181 * 361);
        // grid max within 1e-4 of the analytic Δ
        assert!((surf.max_point().ergotropy - SQRT5).abs() < 1e-4);
        // grid min approaches 0 at the passive direction
        let min = surf.min_point();
        assert!(min.ergotropy >= -1e-12 && min.ergotropy < 1e-4);
        let g = h.ground_direction().unwrap();
        let passive_theta = g[2].acos();
        assert!((min.theta - passive_theta).abs() < PI / 180.0 + 1e-12);
        assert!((min.phi - PI).abs() < std::f64::consts::TAU / 360.0 + 1e-12);
        // r = 0 surface is identically zero
        let zero = ergotropy_surface(&h, 0.0, 5, 5).unwrap();
        assert!(zero.points.iter().all(|p| p.ergotropy == 0.0));
        // row-major over θ then φ
        assert_eq!(zero.points[0].theta, zero.points[4].theta);
        assert!(zero.points[5].theta > 0.0);
        assert!(ergotropy_surface(&h, 1.0, 1, 5).is_err());
    }
}
