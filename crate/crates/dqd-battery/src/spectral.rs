//! 2×2 Hermitian matrices and their spectral decompositions.
//!
//! Small enough to diagonalize in closed form: for H = [[a, b], [b̄, d]]
//! the eigenvalues are m ± R with m = (a+d)/2 and R = √(((a−d)/2)² + |b|²).
//! Eigenvectors are assembled from whichever of the two textbook forms is
//! better conditioned, and the second vector is taken as the orthogonal
//! complement of the first so the pair is orthonormal by construction.

use num_complex::Complex64;

/// 2×2 Hermitian matrix: real diagonal (a, d), upper off-diagonal b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Herm2 {
    pub a: f64,
    pub d: f64,
    pub b: Complex64,
}

/// One normalized 2-component eigenvector.
pub type Ket2 = [Complex64; 2];

/// Eigenvalues with their eigenvectors, kept in a caller-chosen order.
#[derive(Debug, Clone, Copy)]
pub struct SpectralDecomposition {
    pub values: [f64; 2],
    pub kets: [Ket2; 2],
}

impl Herm2 {
    pub fn new(a: f64, d: f64, b: Complex64) -> Self {
        Self { a, d, b }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Matrix element ⟨u|H|v⟩.
    pub fn expectation(&self, u: &Ket2, v: &Ket2) -> Complex64 {
        let hv0 = Complex64::new(self.a, 0.0) * v[0] + self.b * v[1];
        let hv1 = self.b.conj() * v[0] + Complex64::new(self.d, 0.0) * v[1];
        u[0].conj() * hv0 + u[1].conj() * hv1
    }

    /// Eigendecomposition with eigenvalues in ascending order.
    pub fn eigen_ascending(&self) -> ([f64; 2], [Ket2; 2]) {
        let m = 0.5 * (self.a + self.d);
        let h = 0.5 * (self.a - self.d);
        let babs = self.b.norm();
        let radius = (h * h + babs * babs).sqrt();
        let lo = m - radius;
        let hi = m + radius;

        if radius == 0.0 || babs == 0.0 {
            // Diagonal matrix: basis kets, ordered by the diagonal.
            let e0: Ket2 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
            let e1: Ket2 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
            return if self.a <= self.d { ([self.a, self.d], [e0, e1]) } else { ([self.d, self.a], [e1, e0]) };
        }

        // Build the better-conditioned eigenvector first. For h ≥ 0 the
        // large pivot sits with the upper eigenvalue, so (hi − d, b̄) is safe;
        // otherwise (b, lo − a) is.
        let v = if h >= 0.0 {
            normalize([Complex64::new(hi - self.d, 0.0), self.b.conj()])
        } else {
            normalize([self.b, Complex64::new(lo - self.a, 0.0)])
        };
        // Orthogonal complement of (p, q) is (−q̄, p̄).
        let w: Ket2 = [-v[1].conj(), v[0].conj()];
        if h >= 0.0 {
            ([lo, hi], [w, v])
        } else {
            ([lo, hi], [v, w])
        }
    }
}

impl SpectralDecomposition {
    /// Decomposition of a density matrix: eigenvalues descending (ρ₁ ≥ ρ₂).
    pub fn state_descending(rho: &Herm2) -> Self {
        let (vals, kets) = rho.eigen_ascending();
        Self { values: [vals[1], vals[0]], kets: [kets[1], kets[0]] }
    }

    /// Decomposition of a Hamiltonian: eigenvalues ascending (ε₁ ≤ ε₂).
    pub fn hamiltonian_ascending(h: &Herm2) -> Self {
        let (values, kets) = h.eigen_ascending();
        Self { values, kets }
    }
}

/// |⟨u|v⟩|².
pub fn overlap2(u: &Ket2, v: &Ket2) -> f64 {
    (u[0].conj() * v[0] + u[1].conj() * v[1]).norm_sqr()
}

fn normalize(v: Ket2) -> Ket2 {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}
