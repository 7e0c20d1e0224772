//! Dense complex linear algebra for the small generator matrices.
//!
//! Everything here is sized for 8x8 and 16x16 problems: a Schur-based
//! general complex eigensolver and a Pade scaling-and-squaring matrix
//! exponential. Correctness is enforced downstream by reconstruction
//! residuals and an independent integrator oracle, not by solver choice.

mod eig;
mod expm;

pub use eig::{eigendecompose, Eigen};
pub use expm::expm;

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Induced infinity norm (max absolute row sum).
pub fn norm_inf(m: &DMatrix<Complex64>) -> f64 {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Infinity-norm condition number via explicit inverse; `None` if singular.
pub fn cond_inf(m: &DMatrix<Complex64>) -> Option<f64> {
    let inv = m.clone().try_inverse()?;
    Some(norm_inf(m) * norm_inf(&inv))
}

pub fn identity(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_diagonal_element(n, n, Complex64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_on_a_small_matrix() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(3.0, 4.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 2.0),
            ],
        );
        assert_eq!(max_abs(&m), 5.0);
        assert_eq!(norm_inf(&m), 5.0);
    }

    #[test]
    fn condition_of_identity_is_one() {
        let id = identity(5);
        assert!((cond_inf(&id).unwrap() - 1.0).abs() < 1e-15);
    }
}
