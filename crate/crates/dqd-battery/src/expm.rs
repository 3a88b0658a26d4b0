//! Matrix exponential for the 5×5 generators.
//!
//! Scaling-and-squaring with the order-13 diagonal Padé approximant: scale
//! A by 2^s until ‖A‖₁ ≤ θ₁₃ = 5.3719..., evaluate r₁₃(A) = q(A)⁻¹ p(A),
//! and square s times. For the well-scaled generators here (norms of order
//! one to tens) this is accurate to machine precision and serves as the
//! reference solution the RK4 integrator is certified against.

use nalgebra::Matrix5;

/// Padé-13 coefficients b₀..b₁₃ of p(x) = Σ b_{2k+1} x^{2k+1} etc.
const B: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// ‖A‖₁ threshold below which Padé-13 is full accuracy.
const THETA_13: f64 = 5.371_920_351_148_152;

fn norm_1(m: &Matrix5<f64>) -> f64 {
    (0..5)
        .map(|j| (0..5).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// e^A by Padé-13 scaling and squaring.
pub fn expm(a: &Matrix5<f64>) -> Matrix5<f64> {
    let norm = norm_1(a);
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a_scaled = a / 2f64.powi(s);

    let a2 = a_scaled * a_scaled;
    let a4 = a2 * a2;
    let a6 = a2 * a4;
    let ident = Matrix5::identity();

    // u = A (a6 (b13 a6 + b11 a4 + b9 a2) + b7 a6 + b5 a4 + b3 a2 + b1 I)
    let u = a_scaled
        * (a6 * (B[13] * a6 + B[11] * a4 + B[9] * a2)
            + B[7] * a6
            + B[5] * a4
            + B[3] * a2
            + B[1] * ident);
    // v = a6 (b12 a6 + b10 a4 + b8 a2) + b6 a6 + b4 a4 + b2 a2 + b0 I
    let v = a6 * (B[12] * a6 + B[10] * a4 + B[8] * a2)
        + B[6] * a6
        + B[4] * a4
        + B[2] * a2
        + B[0] * ident;

    // r = (v − u)⁻¹ (v + u)
    let mut r = (v - u)
        .lu()
        .solve(&(v + u))
        .expect("Padé denominator is nonsingular for ‖A‖₁ ≤ θ₁₃");
    for _ in 0..s {
        r = r * r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector5;
    use rand::{Rng, SeedableRng};

    #[test]
    fn exponential_of_zero_is_identity() {
        let e = expm(&Matrix5::zeros());
        assert_abs_diff_eq!((e - Matrix5::identity()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn diagonal_matrix_exponentiates_elementwise() {
        let a = Matrix5::from_diagonal(&Vector5::new(-1.0, 0.5, 0.0, 2.0, -3.0));
        let e = expm(&a);
        for i in 0..5 {
            assert_abs_diff_eq!(e[(i, i)], a[(i, i)].exp(), epsilon = 1e-13);
        }
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(e[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn rotation_block_has_exact_trig_entries() {
        // generator of a plane rotation in components (0, 1)
        let w = 1.7;
        let mut a = Matrix5::zeros();
        a[(0, 1)] = -w;
        a[(1, 0)] = w;
        let e = expm(&a);
        assert_abs_diff_eq!(e[(0, 0)], w.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(0, 1)], -w.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(1, 0)], w.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(2, 2)], 1.0, epsilon = 0.0);
    }

    #[test]
    fn semigroup_property_on_random_matrices() {
        // e^{A} e^{A} = e^{2A}, exercising the squaring path via large norms
        let mut rng = rand::rngs::StdRng::seed_from_u64(19);
        for _ in 0..100 {
            let a = Matrix5::from_fn(|_, _| rng.random_range(-3.0..3.0));
            let e1 = expm(&a);
            let e2 = expm(&(2.0 * a));
            assert!(
                ((e1 * e1) - e2).norm() <= 1e-11 * e2.norm().max(1.0),
                "semigroup violation at norm {}",
                norm_1(&a)
            );
        }
    }

    #[test]
    fn matches_taylor_series_on_small_norms() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(37);
        for _ in 0..100 {
            let a = Matrix5::from_fn(|_, _| rng.random_range(-0.05..0.05));
            let mut series = Matrix5::identity();
            let mut term = Matrix5::identity();
            for k in 1..30 {
                term = term * a / (k as f64);
                series += term;
            }
            assert!((expm(&a) - series).norm() < 1e-14);
        }
    }
}
