//! Matrix exponential by scaling-and-squaring with a Pade(13) approximant
//! (Higham 2005). Serves as the transfer-matrix route whenever the
//! eigenbasis is too ill-conditioned to invert.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::identity;

const THETA_13: f64 = 5.371920351148152;

const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm (max absolute column sum).
fn norm_1(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|c| (0..m.nrows()).map(|r| m[(r, c)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }

    let norm = norm_1(a);
    let squarings = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as u32 } else { 0 };
    let scaled = a / Complex64::new(f64::powi(2.0, squarings as i32), 0.0);

    let mut result = pade13(&scaled);
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

fn pade13(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let id = identity(n);
    let b: Vec<Complex64> = PADE_13.iter().map(|&x| Complex64::new(x, 0.0)).collect();

    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let u_inner = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    let u = a * (&a6 * &u_inner + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &id * b[1]);
    let v_inner = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    let v = &a6 * &v_inner + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &id * b[0];

    let denominator = &v - &u;
    let numerator = &v + &u;
    denominator.lu().solve(&numerator).expect("Pade denominator is nonsingular for scaled input")
}
