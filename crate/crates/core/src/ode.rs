//! Adaptive Dormand-Prince 5(4) integration of linear complex systems.
//!
//! This is the independent oracle used to validate the eigendecomposition
//! route of the propagator: it never touches the eigensolver, only
//! matrix-vector products.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::ODE_LOCAL_TOL;

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Difference between the 5th-order weights and the embedded 4th-order ones.
const ERR: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { rtol: ODE_LOCAL_TOL, atol: ODE_LOCAL_TOL, max_steps: 1_000_000 }
    }
}

/// Integrate `y' = M y` from 0 to `t_end >= 0`.
pub fn propagate(
    m: &DMatrix<Complex64>,
    y0: &DVector<Complex64>,
    t_end: f64,
    opts: AdaptiveOptions,
) -> Result<DVector<Complex64>> {
    let mut out = propagate_path(m, y0, &[t_end], opts)?;
    Ok(out.pop().expect("one checkpoint requested"))
}

/// Integrate `y' = M y` through an increasing list of checkpoints, returning
/// the state at each one. Checkpoints must be non-negative and sorted.
pub fn propagate_path(
    m: &DMatrix<Complex64>,
    y0: &DVector<Complex64>,
    checkpoints: &[f64],
    opts: AdaptiveOptions,
) -> Result<Vec<DVector<Complex64>>> {
    if m.nrows() != y0.len() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), got: y0.len() });
    }
    for pair in checkpoints.windows(2) {
        if pair[1] < pair[0] {
            return Err(Error::InvalidParameter("checkpoints must be sorted".into()));
        }
    }
    if let Some(&first) = checkpoints.first() {
        if first < 0.0 {
            return Err(Error::NegativeTau(first));
        }
    }

    let rhs = |y: &DVector<Complex64>| m * y;
    let mut t = 0.0f64;
    let mut y = y0.clone();
    let mut k1 = rhs(&y);
    let mut h = initial_step(m, opts);
    let mut results = Vec::with_capacity(checkpoints.len());
    let mut steps = 0usize;

    for &target in checkpoints {
        while t < target {
            if steps >= opts.max_steps {
                return Err(Error::StepSizeUnderflow(t));
            }
            steps += 1;
            let h_try = h.min(target - t);
            let min_h = 4.0 * f64::EPSILON * t.abs().max(1.0);
            if h_try < min_h {
                return Err(Error::StepSizeUnderflow(t));
            }

            let (y5, k7, err) = dopri_step(&rhs, &y, &k1, h_try, opts);
            if err <= 1.0 {
                t += h_try;
                y = y5;
                k1 = k7; // first-same-as-last
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h = h_try * grow;
            } else {
                h = h_try * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            }
        }
        results.push(y.clone());
    }
    Ok(results)
}

/// One trial step; returns the 5th-order solution, the last stage derivative,
/// and the scaled error measure (accept when <= 1).
fn dopri_step<F>(
    rhs: &F,
    y: &DVector<Complex64>,
    k1: &DVector<Complex64>,
    h: f64,
    opts: AdaptiveOptions,
) -> (DVector<Complex64>, DVector<Complex64>, f64)
where
    F: Fn(&DVector<Complex64>) -> DVector<Complex64>,
{
    let hc = Complex64::new(h, 0.0);
    let mut k = Vec::with_capacity(7);
    k.push(k1.clone());
    for a_row in A.iter().take(6) {
        let mut arg = y.clone();
        for (j, kj) in k.iter().enumerate() {
            if a_row[j] != 0.0 {
                arg += kj * (hc * Complex64::new(a_row[j], 0.0));
            }
        }
        k.push(rhs(&arg));
    }
    // 6th row of A doubles as the 5th-order weights (FSAL).
    let mut y5 = y.clone();
    for (j, kj) in k.iter().take(6).enumerate() {
        let b = A[5][j];
        if b != 0.0 {
            y5 += kj * (hc * Complex64::new(b, 0.0));
        }
    }
    let k7 = k.pop().expect("seven stages");
    k.push(k7.clone());

    let mut err = 0.0f64;
    for i in 0..y.len() {
        let mut e = Complex64::new(0.0, 0.0);
        for (j, kj) in k.iter().enumerate() {
            if ERR[j] != 0.0 {
                e += kj[i] * Complex64::new(ERR[j], 0.0);
            }
        }
        let scale = opts.atol + opts.rtol * y[i].norm().max(y5[i].norm());
        err = err.max((e.norm() * h) / scale);
    }
    (y5, k7, err)
}

fn initial_step(m: &DMatrix<Complex64>, _opts: AdaptiveOptions) -> f64 {
    let norm = crate::linalg::norm_inf(m).max(1e-12);
    (0.01 / norm).min(0.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm;

    #[test]
    fn scalar_decay_matches_exp() {
        let m = DMatrix::from_element(1, 1, Complex64::new(-0.7, 1.3));
        let y0 = DVector::from_element(1, Complex64::new(1.0, 0.0));
        let y = propagate(&m, &y0, 4.0, AdaptiveOptions::default()).unwrap();
        let exact = (Complex64::new(-0.7, 1.3) * Complex64::new(4.0, 0.0)).exp();
        assert!((y[0] - exact).norm() < 1e-10);
    }

    #[test]
    fn matches_expm_on_a_dense_system() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let m = DMatrix::from_fn(6, 6, |_, _| {
            Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))
        });
        let y0 = DVector::from_fn(6, |i, _| Complex64::new(1.0 / (i as f64 + 1.0), 0.2));
        let t = 3.0;
        let via_ode = propagate(&m, &y0, t, AdaptiveOptions::default()).unwrap();
        let via_expm = expm(&(&m * Complex64::new(t, 0.0))) * &y0;
        for i in 0..6 {
            assert!((via_ode[i] - via_expm[i]).norm() < 1e-9);
        }
    }

    #[test]
    fn checkpoints_must_be_sorted_and_nonnegative() {
        let m = DMatrix::from_element(1, 1, Complex64::new(-1.0, 0.0));
        let y0 = DVector::from_element(1, Complex64::new(1.0, 0.0));
        assert!(propagate_path(&m, &y0, &[1.0, 0.5], AdaptiveOptions::default()).is_err());
        assert!(matches!(
            propagate_path(&m, &y0, &[-1.0], AdaptiveOptions::default()),
            Err(Error::NegativeTau(_))
        ));
    }

    #[test]
    fn zero_time_returns_initial_state() {
        let m = DMatrix::from_element(1, 1, Complex64::new(-1.0, 0.0));
        let y0 = DVector::from_element(1, Complex64::new(0.3, -0.4));
        let y = propagate(&m, &y0, 0.0, AdaptiveOptions::default()).unwrap();
        assert_eq!(y, y0);
    }
}
