//! Feedback targets, control angles, and stationary states.
//!
//! The no-jump evolution of the occupied sector is generated by the
//! non-Hermitian effective Hamiltonian
//!
//!   H̃ = H − (i/2) Γ_R |R⟩⟨R|,
//!
//! whose eigenvectors are the states the jump-conditioned control can
//! stabilize. Its eigenvalues are
//!
//!   ε̃∓ = ¼(−iΓ_R ∓ √(4ε² + 4iεΓ_R − Γ_R² + 16Tc²)),
//!
//! and each eigenvector decays to the drain with the effective rate
//! Γ_R^j = −2 Im ε̃_j; the two rates sum to Γ_R. With the control aimed at
//! an eigenvector |φ_j⟩ the stationary state is the mixture
//!
//!   ρ_stat = (Γ_R^j |0⟩⟨0| + Γ_L |φ_j⟩⟨φ_j|) / (Γ_L + Γ_R^j),
//!
//! which collapses onto the pure target as Γ_R → 0.
//!
//! The target Bloch coordinates are evaluated in cancellation-free form.
//! With A = 4ε² + Γ_R² + 16Tc² and Γ_W = √(A² − 64Γ_R²Tc²):
//!
//!   ⟨σ_y⟩ = 8 Γ_R Tc / (A + Γ_W),
//!   ⟨σ_z⟩ = ± 4ε / √(2(Γ_W + 4ε² + 16Tc² − Γ_R²)),
//!   ⟨σ_x⟩ = 16 ε Tc ⟨σ_z⟩ / (4ε² + Γ_R² − 16Tc² + Γ_W).
//!
//! These are algebraically identical to the textbook quotient forms
//! (rationalize each difference against Γ_W) but remain finite and fully
//! accurate down to Γ_R = 0, where they reduce exactly to the
//! maximum-ergotropy direction (2Tc/Δ, 0, ε/Δ).

use nalgebra::{Vector5, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::liouville::{Liouvillian, LiouvilleVector};

/// Tolerance for clamping inverse-cosine arguments that drift past ±1.
const ACOS_SLACK: f64 = 1e-9;

/// Which eigenvector of H̃ the control aims at.
///
/// `PositiveSx` (the default) selects the branch with ⟨σ_x⟩ > 0 that
/// connects to the maximum-ergotropy direction as Γ_R → 0; the other branch
/// carries substantially less ergotropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    #[default]
    PositiveSx,
    NegativeSx,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::PositiveSx => 1.0,
            Branch::NegativeSx => -1.0,
        }
    }
}

/// A stabilizable pure state of the controlled dot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetState {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub branch: Branch,
    /// Γ_W = √((4ε² + Γ_R² + 16Tc²)² − 64Γ_R²Tc²).
    pub gamma_w: f64,
}

impl TargetState {
    pub fn bloch_norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }
}

/// Rotation-axis angle θ (axis n = (sinθ, 0, cosθ)) and rotation angle θ_C
/// of the feedback unitary exp(−iθ_C n·σ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlParams {
    pub theta: f64,
    pub theta_c: f64,
    /// Set when the requested target was |L⟩ itself, where the rotation
    /// axis is undefined and the identity is returned.
    #[serde(default)]
    pub degenerate: bool,
}

impl ControlParams {
    /// No-op control: electrons enter the left dot unrotated.
    pub fn identity() -> Self {
        Self { theta: 0.0, theta_c: 0.0, degenerate: false }
    }

    pub fn explicit(theta: f64, theta_c: f64) -> Self {
        Self { theta, theta_c, degenerate: false }
    }

    /// Rotation axis n = (sinθ, 0, cosθ).
    pub fn axis(&self) -> [f64; 3] {
        [self.theta.sin(), 0.0, self.theta.cos()]
    }

    /// Bloch vector the control injects, i.e. the image of |L⟩ under the
    /// feedback unitary.
    pub fn injected_bloch(&self) -> [f64; 3] {
        let (theta, theta_c) = (self.theta, self.theta_c);
        [
            (2.0 * theta).sin() * theta_c.sin().powi(2),
            theta.sin() * (2.0 * theta_c).sin(),
            theta.cos().powi(2) + (2.0 * theta_c).cos() * theta.sin().powi(2),
        ]
    }
}

/// Complex eigenvalues ε̃∓ of H̃ and the effective drain rates Γ_R^j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveHamiltonianSpectrum {
    /// Eigenvalue ε̃₋ = ¼(−iΓ_R − √·) and its rate Γ_R^− = −2 Im ε̃₋.
    pub eigenvalue_minus: Complex64,
    /// Eigenvalue ε̃₊ = ¼(−iΓ_R + √·) and its rate Γ_R^+ = −2 Im ε̃₊.
    pub eigenvalue_plus: Complex64,
    pub rate_minus: f64,
    pub rate_plus: f64,
}

impl EffectiveHamiltonianSpectrum {
    /// Rate of the eigenvector the given branch stabilizes. The ⟨σ_x⟩ > 0
    /// branch is the ε̃₊ eigenvector (it flows to the excited state +Δ/2 as
    /// Γ_R → 0); the other branch pairs with ε̃₋.
    pub fn rate_for(&self, branch: Branch) -> f64 {
        match branch {
            Branch::PositiveSx => self.rate_plus,
            Branch::NegativeSx => self.rate_minus,
        }
    }
}

/// Eigenvalues of the effective Hamiltonian and the rates Γ_R^j = −2 Im ε̃_j.
pub fn effective_spectrum(h: &QubitHamiltonian, gamma_r: f64) -> Result<EffectiveHamiltonianSpectrum> {
    if !gamma_r.is_finite() || gamma_r < 0.0 {
        return Err(Error::InvalidInput(format!("Γ_R must be finite and nonnegative, got {gamma_r}")));
    }
    let (eps, tc) = (h.epsilon(), h.tc());
    let radicand = Complex64::new(
        4.0 * eps * eps - gamma_r * gamma_r + 16.0 * tc * tc,
        4.0 * eps * gamma_r,
    );
    let root = radicand.sqrt();
    let base = Complex64::new(0.0, -gamma_r);
    let minus = 0.25 * (base - root);
    let plus = 0.25 * (base + root);
    // + 0.0 normalizes a negative zero out of the Hermitian limit
    Ok(EffectiveHamiltonianSpectrum {
        eigenvalue_minus: minus,
        eigenvalue_plus: plus,
        rate_minus: -2.0 * minus.im + 0.0,
        rate_plus: -2.0 * plus.im + 0.0,
    })
}

/// Target-state Bloch coordinates for the given branch.
///
/// `gamma_r = 0` yields the exact limit (2Tc/Δ, 0, ε/Δ) (mirrored for the
/// other branch). For finite Γ_R the point ε = 0 is rejected: the ⟨σ_x⟩
/// coordinate divides by ε there.
pub fn target_state(h: &QubitHamiltonian, gamma_r: f64, branch: Branch) -> Result<TargetState> {
    if !gamma_r.is_finite() || gamma_r < 0.0 {
        return Err(Error::InvalidInput(format!("Γ_R must be finite and nonnegative, got {gamma_r}")));
    }
    let (eps, tc) = (h.epsilon(), h.tc());
    if eps == 0.0 && gamma_r > 0.0 {
        return Err(Error::Domain(
            "target-state coordinates divide by ε; ε = 0 with Γ_R > 0 is unsupported".into(),
        ));
    }
    let delta = h.delta();
    if delta == 0.0 {
        return Err(Error::Domain("degenerate Hamiltonian (ε = Tc = 0) has no target state".into()));
    }
    if gamma_r == 0.0 {
        // dedicated Γ_R → 0 branch: the maximum-ergotropy direction
        let sign = branch.sign();
        return Ok(TargetState {
            sx: sign * 2.0 * tc / delta,
            sy: 0.0,
            sz: sign * eps / delta,
            branch,
            gamma_w: 4.0 * delta * delta,
        });
    }
    let gr2 = gamma_r * gamma_r;
    let four_delta2 = 4.0 * eps * eps + 16.0 * tc * tc;
    let a = four_delta2 + gr2;
    let gw_sq = a * a - 64.0 * gr2 * tc * tc;
    if gw_sq < 0.0 {
        // algebraically impossible ((4Tc − Γ_R)² + 4ε² ≥ 0); guards roundoff
        return Err(Error::Domain(format!("negative radicand {gw_sq} under Γ_W")));
    }
    let gamma_w = gw_sq.sqrt();

    let sy = 8.0 * gamma_r * tc / (a + gamma_w);
    let sz_rad = gamma_w + four_delta2 - gr2;
    if sz_rad <= 0.0 {
        return Err(Error::Domain(format!("negative radicand {sz_rad} under ⟨σ_z⟩")));
    }
    let sz = branch.sign() * 4.0 * eps / (2.0 * sz_rad).sqrt();
    let sx = 16.0 * eps * tc * sz / (4.0 * eps * eps + gr2 - 16.0 * tc * tc + gamma_w);
    Ok(TargetState { sx, sy, sz, branch, gamma_w })
}

/// Invert the injection map: control angles whose rotation takes |L⟩ to the
/// requested target,
///
///   θ  = arccos(⟨σ_x⟩ / √(⟨σ_x⟩² + (⟨σ_z⟩ − 1)²)),
///   θ_C = arccos(⟨σ_y⟩ / √(2 − 2⟨σ_z⟩)).
///
/// Only the ⟨σ_y⟩ ≥ 0 half of the Bloch sphere is reachable; targets with
/// ⟨σ_y⟩ < 0 are a hard error. A target at |L⟩ itself needs no rotation and
/// returns the identity with the degeneracy flag set.
pub fn solve_control_angles(target: &TargetState) -> Result<ControlParams> {
    let (sx, sy, sz) = (target.sx, target.sy, target.sz);
    if sy < -ACOS_SLACK {
        return Err(Error::UnreachableTarget(format!(
            "⟨σ_y⟩ = {sy} < 0: only the ⟨σ_y⟩ ≥ 0 hemisphere can be stabilized"
        )));
    }
    let norm = target.bloch_norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidInput(format!("target state must be pure, |s| = {norm}")));
    }
    let denom_theta = (sx * sx + (sz - 1.0) * (sz - 1.0)).sqrt();
    let denom_c = (2.0 - 2.0 * sz).max(0.0).sqrt();
    if denom_theta == 0.0 || denom_c == 0.0 {
        return Ok(ControlParams { theta: 0.0, theta_c: 0.0, degenerate: true });
    }
    let theta = clamped_acos(sx / denom_theta)?;
    let theta_c = clamped_acos(sy.max(0.0) / denom_c)?;
    Ok(ControlParams { theta, theta_c, degenerate: false })
}

fn clamped_acos(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + ACOS_SLACK {
        return Err(Error::Domain(format!("inverse-cosine argument {x} outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// How a stationary state was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteadyStateKind {
    /// The generator has a one-dimensional kernel.
    Unique,
    /// Multiple stationary directions; the returned vector is the ergodic
    /// projection of the supplied initial condition.
    ProjectedFromInitial,
}

/// Stationary vector of the assembled generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub state: LiouvilleVector,
    pub kind: SteadyStateKind,
    /// ‖𝓛 v‖₂ of the returned vector.
    pub residual: f64,
}

/// Stationary state by dense null-space extraction from the 5×5 generator.
///
/// The kernel is read off the SVD. A unique null direction is normalized to
/// ρ₀₀ + n_occ = 1. When the kernel has two or more directions (e.g.
/// Γ_L = Γ_R = 0) the long-time state depends on the initial condition:
/// with `initial` supplied, the spectral (ergodic) projector
/// P = N (MᵀN)⁻¹ Mᵀ built from the right (N) and left (M) null bases is
/// applied to it; otherwise the degeneracy is an error.
pub fn steady_state(gen: &Liouvillian, initial: Option<&LiouvilleVector>) -> Result<SteadyState> {
    let svd = SVD::new(gen.matrix, true, true);
    let u = svd.u.as_ref().expect("SVD computed with u");
    let v_t = svd.v_t.as_ref().expect("SVD computed with v_t");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-12 * sigma_max.max(1.0);

    let mut null_idx: Vec<usize> = (0..5).filter(|&i| sigma[i] <= tol).collect();
    if null_idx.is_empty() {
        // no exact zero within tolerance; fall back to the smallest direction
        let (imin, _) = sigma
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("five singular values");
        null_idx.push(imin);
    }

    if null_idx.len() == 1 {
        let i = null_idx[0];
        let dir: Vector5<f64> = v_t.row(i).transpose();
        let trace = dir[0] + dir[1];
        if trace.abs() < 1e-12 {
            return Err(Error::NonUniqueSteadyState(
                "stationary direction carries no probability; generator is degenerate".into(),
            ));
        }
        let state = LiouvilleVector::from_vector(&(dir / trace));
        let residual = gen.residual(&state);
        return Ok(SteadyState { state, kind: SteadyStateKind::Unique, residual });
    }

    let Some(v0) = initial else {
        return Err(Error::NonUniqueSteadyState(format!(
            "{}-dimensional kernel and no initial condition to project",
            null_idx.len()
        )));
    };

    // Ergodic projector onto the kernel along the decaying subspace:
    // right null basis N (rows of Vᵀ), left null basis M (columns of U).
    let k = null_idx.len();
    let mut n_basis = nalgebra::DMatrix::<f64>::zeros(5, k);
    let mut m_basis = nalgebra::DMatrix::<f64>::zeros(5, k);
    for (c, &i) in null_idx.iter().enumerate() {
        for r in 0..5 {
            n_basis[(r, c)] = v_t[(i, r)];
            m_basis[(r, c)] = u[(r, i)];
        }
    }
    let mtn = m_basis.transpose() * &n_basis;
    let rhs = m_basis.transpose() * v0.as_vector();
    let coeffs = mtn.lu().solve(&rhs).ok_or_else(|| {
        Error::NonUniqueSteadyState("defective kernel: ergodic projector does not exist".into())
    })?;
    let projected = n_basis * coeffs;
    let trace = projected[0] + projected[1];
    if trace.abs() < 1e-12 {
        return Err(Error::NonUniqueSteadyState(
            "initial condition has no overlap with the stationary subspace".into(),
        ));
    }
    let state = LiouvilleVector::from_vector(&Vector5::from_iterator(
        projected.iter().map(|x| x / trace),
    ));
    let residual = gen.residual(&state);
    Ok(SteadyState { state, kind: SteadyStateKind::ProjectedFromInitial, residual })
}

/// The closed-form stationary mixture with the control aimed at |φ_j⟩,
/// (Γ_R^j·empty + Γ_L·target)/(Γ_L + Γ_R^j). Phonon-free.
pub fn steady_state_formula(
    h: &QubitHamiltonian,
    gamma_l: f64,
    gamma_r: f64,
    branch: Branch,
) -> Result<LiouvilleVector> {
    let target = target_state(h, gamma_r, branch)?;
    let rate = effective_spectrum(h, gamma_r)?.rate_for(branch);
    let denom = gamma_l + rate;
    if denom == 0.0 {
        return Err(Error::Domain("Γ_L + Γ_R^j = 0: stationary mixture undefined".into()));
    }
    let w = gamma_l / denom;
    Ok(LiouvilleVector {
        rho00: rate / denom,
        n_occ: w,
        sx: w * target.sx,
        sy: w * target.sy,
        sz: w * target.sz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liouville::ReservoirRates;
    use crate::phonon::PhononRates;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    const SQRT5: f64 = 2.236067977499789696;

    fn h11() -> QubitHamiltonian {
        QubitHamiltonian::new(1.0, 1.0).unwrap()
    }

    /// Test oracle: conjugate |L⟩⟨L| by the series matrix exponential of
    /// −iθ_C n·σ and read off the pseudospin components. Independent of the
    /// closed-form injection entries and of the angle solver.
    fn rotate_left_dot(theta: f64, theta_c: f64) -> [f64; 3] {
        // generator −iθ_C (sinθ σx + cosθ σz)
        let g = [
            [
                Complex64::new(0.0, -theta_c * theta.cos()),
                Complex64::new(0.0, -theta_c * theta.sin()),
            ],
            [
                Complex64::new(0.0, -theta_c * theta.sin()),
                Complex64::new(0.0, theta_c * theta.cos()),
            ],
        ];
        // scaling-and-squaring Taylor exponential; scale just enough that the
        // 24-term series is exact to f64 without stacking squaring roundoff
        let norm_est = 2.0 * theta_c.abs().max(1e-3);
        let scale = (norm_est / 0.05).log2().ceil().max(0.0) as u32;
        let s = 2f64.powi(scale as i32);
        let gs = [[g[0][0] / s, g[0][1] / s], [g[1][0] / s, g[1][1] / s]];
        let mut u = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        let mut term = u;
        for k in 1..24 {
            term = mat2_mul(&term, &gs);
            for r in 0..2 {
                for c in 0..2 {
                    term[r][c] /= k as f64;
                    u[r][c] += term[r][c];
                }
            }
        }
        for _ in 0..scale {
            u = mat2_mul(&u, &u);
        }
        // rho = U |L⟩⟨L| U† has entries U[r][0] * conj(U[c][0])
        let rho = [
            [u[0][0] * u[0][0].conj(), u[0][0] * u[1][0].conj()],
            [u[1][0] * u[0][0].conj(), u[1][0] * u[1][0].conj()],
        ];
        [
            2.0 * rho[0][1].re,
            2.0 * rho[0][1].im, // (ρ_LR − ρ_RL)/i
            (rho[0][0] - rho[1][1]).re,
        ]
    }

    fn mat2_mul(
        a: &[[Complex64; 2]; 2],
        b: &[[Complex64; 2]; 2],
    ) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        out
    }

    #[test]
    fn target_state_at_unit_parameters() {
        // Γ_W = √377; coordinates frozen from 30-digit evaluation
        let t = target_state(&h11(), 1.0, Branch::NegativeSx).unwrap();
        assert_abs_diff_eq!(t.gamma_w, 377f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.sz, -0.45633750610025411, epsilon = 1e-13);
        assert_abs_diff_eq!(t.sy, 0.19793902013155014, epsilon = 1e-13);
        assert_abs_diff_eq!(t.sx, -0.86751151279712843, epsilon = 1e-13);
        assert_abs_diff_eq!(t.bloch_norm(), 1.0, epsilon = 1e-12);

        let p = target_state(&h11(), 1.0, Branch::PositiveSx).unwrap();
        assert_abs_diff_eq!(p.sx, 0.86751151279712843, epsilon = 1e-13);
        assert!(p.sy >= 0.0 && t.sy >= 0.0);
    }

    #[test]
    fn target_state_limit_is_maximum_ergotropy_direction() {
        let t = target_state(&h11(), 0.0, Branch::PositiveSx).unwrap();
        assert_abs_diff_eq!(t.sx, 2.0 / SQRT5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.sy, 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(t.sz, 1.0 / SQRT5, epsilon = 1e-15);

        let h = QubitHamiltonian::new(1.0, 0.5).unwrap();
        let t = target_state(&h, 0.0, Branch::PositiveSx).unwrap();
        assert_abs_diff_eq!(t.sx, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.sz, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn target_state_matches_effective_hamiltonian_eigenvector() {
        // independent oracle: diagonalize H̃ = [[ε/2, Tc], [Tc, −ε/2 − iΓ_R/2]]
        // numerically and compare Bloch coordinates of the normalized
        // eigenvector with the closed form
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        for _ in 0..400 {
            let eps = rng.random_range(0.05..3.0);
            let tc = rng.random_range(0.05..3.0);
            let gr = rng.random_range(0.0..3.0);
            let h = QubitHamiltonian::new(eps, tc).unwrap();
            let spec = effective_spectrum(&h, gr).unwrap();
            for (branch, lam) in [
                (Branch::PositiveSx, spec.eigenvalue_plus),
                (Branch::NegativeSx, spec.eigenvalue_minus),
            ] {
                let t = target_state(&h, gr, branch).unwrap();
                // eigenvector (1, (λ − ε/2)/Tc) of the 2×2 H̃
                let v1 = Complex64::new(1.0, 0.0);
                let v2 = (lam - Complex64::new(eps / 2.0, 0.0)) / Complex64::new(tc, 0.0);
                let norm2 = v1.norm_sqr() + v2.norm_sqr();
                let rho01 = v1 * v2.conj() / norm2;
                let sz = (v1.norm_sqr() - v2.norm_sqr()) / norm2;
                assert_abs_diff_eq!(t.sx, 2.0 * rho01.re, epsilon = 1e-9);
                assert_abs_diff_eq!(t.sy, 2.0 * rho01.im, epsilon = 1e-9);
                assert_abs_diff_eq!(t.sz, sz, epsilon = 1e-9);
                // purity and reachability
                assert_abs_diff_eq!(t.bloch_norm(), 1.0, epsilon = 1e-9);
                assert!(t.sy >= 0.0);
            }
        }
    }

    #[test]
    fn target_state_limit_consistency() {
        // ‖target(γ_r) − target(0)‖ decreases monotonically through
        // γ_r = 1e-2, 1e-4, 1e-6
        let t0 = target_state(&h11(), 0.0, Branch::PositiveSx).unwrap();
        let mut last = f64::INFINITY;
        for gr in [1e-2, 1e-4, 1e-6] {
            let t = target_state(&h11(), gr, Branch::PositiveSx).unwrap();
            let err = ((t.sx - t0.sx).powi(2) + (t.sy - t0.sy).powi(2) + (t.sz - t0.sz).powi(2))
                .sqrt();
            assert!(err < last, "error {err} did not decrease at γ_r = {gr} (last {last})");
            last = err;
        }
    }

    #[test]
    fn target_state_domain_errors() {
        let h0 = QubitHamiltonian::new(0.0, 1.0).unwrap();
        assert!(matches!(target_state(&h0, 1.0, Branch::PositiveSx), Err(Error::Domain(_))));
        // ε = 0 in the decoupled limit is fine: the limit formulas hold
        let t = target_state(&h0, 0.0, Branch::PositiveSx).unwrap();
        assert_abs_diff_eq!(t.sx, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.sz, 0.0, epsilon = 0.0);
        let hdeg = QubitHamiltonian::new(0.0, 0.0).unwrap();
        assert!(target_state(&hdeg, 0.0, Branch::PositiveSx).is_err());
    }

    #[test]
    fn effective_spectrum_values_and_sum_rule() {
        let spec = effective_spectrum(&h11(), 1.0).unwrap();
        // frozen from 30-digit evaluation of ¼(−i ∓ √(19 + 4i))
        assert_abs_diff_eq!(spec.eigenvalue_minus.re, -1.0956802658472555, epsilon = 1e-13);
        assert_abs_diff_eq!(spec.eigenvalue_minus.im, -0.36408437652506353, epsilon = 1e-13);
        assert_abs_diff_eq!(spec.rate_minus, 0.72816875305012706, epsilon = 1e-13);
        assert_abs_diff_eq!(spec.rate_plus, 0.27183124694987294, epsilon = 1e-13);
        assert!(spec.eigenvalue_minus.im <= 0.0 && spec.eigenvalue_plus.im <= 0.0);

        // Hermitian limit: real ±Δ/2, zero rates
        let spec0 = effective_spectrum(&h11(), 0.0).unwrap();
        assert_abs_diff_eq!(spec0.eigenvalue_minus.re, -0.5 * SQRT5, epsilon = 1e-15);
        assert_abs_diff_eq!(spec0.eigenvalue_plus.re, 0.5 * SQRT5, epsilon = 1e-15);
        assert_abs_diff_eq!(spec0.rate_minus, 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(spec0.rate_plus, 0.0, epsilon = 0.0);

        // Tc = 0: radicand is (2ε + iΓ_R)², eigenvalues ε/2 and −ε/2 − iΓ_R/2
        let h = QubitHamiltonian::new(1.5, 0.0).unwrap();
        let spec = effective_spectrum(&h, 0.8).unwrap();
        assert_abs_diff_eq!(spec.eigenvalue_plus.re, 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.eigenvalue_plus.im, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.eigenvalue_minus.re, -0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.eigenvalue_minus.im, -0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.rate_plus, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(spec.rate_minus, 0.8, epsilon = 1e-14);

        // sum rule over random parameters
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..1000 {
            let h = QubitHamiltonian::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
                .unwrap();
            let gr = rng.random_range(0.0..3.0);
            let spec = effective_spectrum(&h, gr).unwrap();
            assert_abs_diff_eq!(spec.rate_plus + spec.rate_minus, gr, epsilon = 1e-10);
        }
    }

    #[test]
    fn control_angles_reproduce_targets_via_rotation_oracle() {
        // limit target for ε = Tc = 1
        let t = target_state(&h11(), 0.0, Branch::PositiveSx).unwrap();
        let ctrl = solve_control_angles(&t).unwrap();
        let got = rotate_left_dot(ctrl.theta, ctrl.theta_c);
        assert_abs_diff_eq!(got[0], t.sx, epsilon = 1e-9);
        assert_abs_diff_eq!(got[1], t.sy, epsilon = 1e-9);
        assert_abs_diff_eq!(got[2], t.sz, epsilon = 1e-9);
        // the closed-form injection agrees with the oracle too
        let inj = ctrl.injected_bloch();
        for i in 0..3 {
            assert_abs_diff_eq!(inj[i], got[i], epsilon = 1e-9);
        }

        // equatorial target (0, 1, 0): θ = π/2, θ_C = π/4
        let t = TargetState {
            sx: 0.0,
            sy: 1.0,
            sz: 0.0,
            branch: Branch::PositiveSx,
            gamma_w: f64::NAN,
        };
        let ctrl = solve_control_angles(&t).unwrap();
        assert_abs_diff_eq!(ctrl.theta, std::f64::consts::FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(ctrl.theta_c, std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
        let got = rotate_left_dot(ctrl.theta, ctrl.theta_c);
        assert_abs_diff_eq!(got[1], 1.0, epsilon = 1e-9);

        // random reachable pure targets
        let mut rng = rand::rngs::StdRng::seed_from_u64(57);
        for _ in 0..300 {
            let z: f64 = rng.random_range(-1.0..0.999);
            let phi = rng.random_range(0.0..std::f64::consts::PI); // sy ≥ 0 half
            let rho = (1.0 - z * z).sqrt();
            let t = TargetState {
                sx: rho * phi.cos(),
                sy: rho * phi.sin(),
                sz: z,
                branch: Branch::PositiveSx,
                gamma_w: f64::NAN,
            };
            let ctrl = solve_control_angles(&t).unwrap();
            let got = rotate_left_dot(ctrl.theta, ctrl.theta_c);
            assert_abs_diff_eq!(got[0], t.sx, epsilon = 1e-9);
            assert_abs_diff_eq!(got[1], t.sy, epsilon = 1e-9);
            assert_abs_diff_eq!(got[2], t.sz, epsilon = 1e-9);
        }
    }

    #[test]
    fn control_angle_edge_cases() {
        // target |L⟩: identity with degeneracy flag
        let t = TargetState { sx: 0.0, sy: 0.0, sz: 1.0, branch: Branch::PositiveSx, gamma_w: 0.0 };
        let ctrl = solve_control_angles(&t).unwrap();
        assert!(ctrl.degenerate);
        assert_eq!(ctrl.theta_c, 0.0);
        // unreachable hemisphere
        let t = TargetState { sx: 0.0, sy: -0.6, sz: 0.8, branch: Branch::PositiveSx, gamma_w: 0.0 };
        assert!(matches!(solve_control_angles(&t), Err(Error::UnreachableTarget(_))));
    }

    #[test]
    fn steady_state_unique_cases() {
        // uncontrolled transport at unit parameters: exact rational
        // stationary vector (4, 13, 8, 4, 5)/17
        let gen = Liouvillian::assemble(
            &h11(),
            &ReservoirRates::new(1.0, 1.0).unwrap(),
            &ControlParams::identity(),
            &PhononRates::zero(),
        );
        let ss = steady_state(&gen, None).unwrap();
        assert_eq!(ss.kind, SteadyStateKind::Unique);
        assert!(ss.residual <= 1e-12);
        assert_abs_diff_eq!(ss.state.rho00, 4.0 / 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ss.state.n_occ, 13.0 / 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ss.state.sx, 8.0 / 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ss.state.sy, 4.0 / 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ss.state.sz, 5.0 / 17.0, epsilon = 1e-12);

        // source switched off: drain empties the dot
        let gen = Liouvillian::assemble(
            &h11(),
            &ReservoirRates::new(0.0, 1.0).unwrap(),
            &ControlParams::identity(),
            &PhononRates::zero(),
        );
        let ss = steady_state(&gen, None).unwrap();
        assert_abs_diff_eq!(ss.state.rho00, 1.0, epsilon = 1e-10);
        assert!(ss.state.bloch_norm() < 1e-10);
    }

    #[test]
    fn steady_state_gamma_r_zero_projects_initial_condition() {
        // Γ_R = 0 with control on: two stationary directions; from the empty
        // state the ergodic projection is the pure target (0, 1, 2/√5, 0, 1/√5)
        let t = target_state(&h11(), 0.0, Branch::PositiveSx).unwrap();
        let ctrl = solve_control_angles(&t).unwrap();
        let gen = Liouvillian::assemble(
            &h11(),
            &ReservoirRates::new(1.0, 0.0).unwrap(),
            &ctrl,
            &PhononRates::zero(),
        );
        assert!(matches!(
            steady_state(&gen, None),
            Err(Error::NonUniqueSteadyState(_))
        ));
        let ss = steady_state(&gen, Some(&LiouvilleVector::empty())).unwrap();
        assert_eq!(ss.kind, SteadyStateKind::ProjectedFromInitial);
        assert_abs_diff_eq!(ss.state.rho00, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ss.state.n_occ, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ss.state.sx, 2.0 / SQRT5, epsilon = 1e-10);
        assert_abs_diff_eq!(ss.state.sy, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ss.state.sz, 1.0 / SQRT5, epsilon = 1e-10);
    }

    #[test]
    fn steady_state_matches_interpolation_formula() {
        // ρ_stat = (Γ_R^j·empty + Γ_L·target)/(Γ_L + Γ_R^j) with the control
        // pointed at |φ_j⟩, phonon-free
        for gr in [0.1, 0.5, 1.0] {
            for branch in [Branch::PositiveSx, Branch::NegativeSx] {
                let t = target_state(&h11(), gr, branch).unwrap();
                let ctrl = solve_control_angles(&t).unwrap();
                let gen = Liouvillian::assemble(
                    &h11(),
                    &ReservoirRates::new(1.0, gr).unwrap(),
                    &ctrl,
                    &PhononRates::zero(),
                );
                let ss = steady_state(&gen, None).unwrap();
                let formula = steady_state_formula(&h11(), 1.0, gr, branch).unwrap();
                assert_abs_diff_eq!(ss.state.rho00, formula.rho00, epsilon = 1e-8);
                assert_abs_diff_eq!(ss.state.n_occ, formula.n_occ, epsilon = 1e-8);
                assert_abs_diff_eq!(ss.state.sx, formula.sx, epsilon = 1e-8);
                assert_abs_diff_eq!(ss.state.sy, formula.sy, epsilon = 1e-8);
                assert_abs_diff_eq!(ss.state.sz, formula.sz, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn maximum_ergotropy_link() {
        // the Γ_R → 0 target carries exactly the maximum ergotropy Δ
        let mut rng = rand::rngs::StdRng::seed_from_u64(71);
        for _ in 0..200 {
            let h = QubitHamiltonian::new(rng.random_range(0.05..3.0), rng.random_range(0.05..3.0))
                .unwrap();
            let t = target_state(&h, 0.0, Branch::PositiveSx).unwrap();
            let s = crate::bloch::BlochState::from_cartesian(t.sx, t.sy, t.sz).unwrap();
            let w = crate::ergotropy::ergotropy_closed_form(&s, &h);
            assert_abs_diff_eq!(w, h.delta(), epsilon = 1e-12);
        }
    }
}
