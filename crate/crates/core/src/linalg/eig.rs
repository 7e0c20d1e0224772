//! General complex eigendecomposition: Householder reduction to Hessenberg
//! form, implicitly shifted QR iteration to (complex) Schur form, then
//! eigenvectors by back-substitution in the triangular factor.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
/// QR sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 40;

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Eigenvalues in the order produced by the deflation.
    pub values: DVector<Complex64>,
    /// Right eigenvectors as columns, each of unit Euclidean norm with its
    /// largest component rotated onto the positive real axis.
    pub vectors: DMatrix<Complex64>,
}

/// Eigenvalues and right eigenvectors of a general complex square matrix.
pub fn eigendecompose(a: &DMatrix<Complex64>) -> Result<Eigen> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigendecompose requires a square matrix");
    if n == 0 {
        return Ok(Eigen { values: DVector::zeros(0), vectors: DMatrix::zeros(0, 0) });
    }
    if n == 1 {
        return Ok(Eigen {
            values: DVector::from_element(1, a[(0, 0)]),
            vectors: DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)),
        });
    }

    let (mut t, mut z) = hessenberg(a);
    schur(&mut t, &mut z)?;

    let values = DVector::from_iterator(n, (0..n).map(|k| t[(k, k)]));
    let vectors = eigenvectors_from_schur(&t, &z, &values);
    Ok(Eigen { values, vectors })
}

/// Unitary reduction to upper Hessenberg form: returns `(H, Q)` with
/// `A = Q H Q^H`.
fn hessenberg(a: &DMatrix<Complex64>) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let n = a.nrows();
    let mut h = a.clone();
    let mut q = super::identity(n);

    for k in 0..n.saturating_sub(2) {
        // Householder vector for the column below the subdiagonal.
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= EPS * super::max_abs(a) {
            continue;
        }
        let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sqr;

        // H <- (I - beta v v^H) H, rows k+1..n.
        for col in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, col)]).sum();
            let scale = dot * beta;
            for i in 0..v.len() {
                h[(k + 1 + i, col)] -= scale * v[i];
            }
        }
        // H <- H (I - beta v v^H), columns k+1..n.
        for row in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| h[(row, k + 1 + i)] * v[i]).sum();
            let scale = dot * beta;
            for i in 0..v.len() {
                h[(row, k + 1 + i)] -= scale * v[i].conj();
            }
        }
        // Q <- Q (I - beta v v^H).
        for row in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| q[(row, k + 1 + i)] * v[i]).sum();
            let scale = dot * beta;
            for i in 0..v.len() {
                q[(row, k + 1 + i)] -= scale * v[i].conj();
            }
        }
        // Zero out the annihilated entries explicitly.
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with real `c >= 0`
/// such that `G [x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ya = y.norm();
    if ya == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let xa = x.norm();
    let d = (xa * xa + ya * ya).sqrt();
    if xa == 0.0 {
        (0.0, y.conj() / ya)
    } else {
        let c = xa / d;
        let s = (x / xa) * y.conj() / d;
        (c, s)
    }
}

/// In-place implicitly shifted QR iteration driving the Hessenberg matrix to
/// upper triangular (complex Schur) form; `z` accumulates the transformations.
fn schur(h: &mut DMatrix<Complex64>, z: &mut DMatrix<Complex64>) -> Result<()> {
    let n = h.nrows();
    let scale = super::max_abs(h).max(1.0);
    let mut hi = n - 1;
    let mut sweeps_here = 0usize;
    let mut total_budget = MAX_SWEEPS_PER_EIGENVALUE * n;

    loop {
        // Deflate negligible subdiagonals.
        for i in 1..=hi {
            let bound = EPS * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()).max(EPS * scale);
            if h[(i, i - 1)].norm() <= bound {
                h[(i, i - 1)] = Complex64::new(0.0, 0.0);
            }
        }
        while hi > 0 && h[(hi, hi - 1)] == Complex64::new(0.0, 0.0) {
            hi -= 1;
            sweeps_here = 0;
        }
        if hi == 0 {
            return Ok(());
        }
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)] != Complex64::new(0.0, 0.0) {
            lo -= 1;
        }

        sweeps_here += 1;
        if total_budget == 0 {
            return Err(Error::EigNonConvergence(MAX_SWEEPS_PER_EIGENVALUE * n));
        }
        total_budget -= 1;

        let mu = if sweeps_here % 12 == 0 {
            // Exceptional shift to break symmetric stalls.
            let off =
                h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(1.5 * off, 0.0)
        } else {
            wilkinson_shift(h, hi)
        };

        // Chase the bulge down the active block.
        let mut x = h[(lo, lo)] - mu;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let cc = Complex64::new(c, 0.0);
            // Left rotation on rows k, k+1.
            let col_start = k.saturating_sub(1).max(lo);
            for j in col_start..n {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = cc * a + s * b;
                h[(k + 1, j)] = -s.conj() * a + cc * b;
            }
            // Right rotation on columns k, k+1.
            let row_end = (k + 2).min(hi) + 1;
            for i in 0..row_end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * cc + b * s.conj();
                h[(i, k + 1)] = -a * s + b * cc;
            }
            for i in 0..n {
                let a = z[(i, k)];
                let b = z[(i, k + 1)];
                z[(i, k)] = a * cc + b * s.conj();
                z[(i, k + 1)] = -a * s + b * cc;
            }
            if k + 2 <= hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(h: &DMatrix<Complex64>, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * Complex64::new(0.5, 0.0);
    let disc = (half * half + b * c).sqrt();
    let l1 = d + half + disc;
    let l2 = d + half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Back-substitution on the triangular Schur factor, then transformation to
/// eigenvectors of the original matrix.
///
/// For repeated eigenvalues of a diagonalizable matrix the pivot and the
/// accumulated sum vanish together; in that case the free component is set
/// to zero, which keeps the computed vectors linearly independent.
fn eigenvectors_from_schur(
    t: &DMatrix<Complex64>,
    z: &DMatrix<Complex64>,
    values: &DVector<Complex64>,
) -> DMatrix<Complex64> {
    let n = t.nrows();
    let scale = super::max_abs(t).max(1.0);
    let pivot_floor = 64.0 * EPS * scale;
    let mut vectors = DMatrix::zeros(n, n);

    for k in 0..n {
        let lambda = values[k];
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let sum: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
            let diag = t[(i, i)] - lambda;
            if diag.norm() >= pivot_floor {
                y[i] = -sum / diag;
            } else if sum.norm() <= pivot_floor * y.iter().map(|v| v.norm()).fold(1.0, f64::max) {
                y[i] = Complex64::new(0.0, 0.0);
            } else {
                y[i] = -sum / Complex64::new(pivot_floor, 0.0);
            }
        }
        // x = Z y, restricted to the leading k+1 columns of Z.
        let mut x: DVector<Complex64> = DVector::zeros(n);
        for j in 0..=k {
            if y[j] != Complex64::new(0.0, 0.0) {
                for i in 0..n {
                    x[i] += z[(i, j)] * y[j];
                }
            }
        }
        // Deterministic normalization: unit norm, largest entry real positive.
        let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            x /= Complex64::new(norm, 0.0);
        }
        let (mut idx, mut best) = (0usize, 0.0f64);
        for (i, v) in x.iter().enumerate() {
            if v.norm() > best {
                best = v.norm();
                idx = i;
            }
        }
        if best > 0.0 {
            let phase = x[idx] / x[idx].norm();
            x /= phase;
        }
        vectors.set_column(k, &x);
    }
    vectors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs};

    fn residual(a: &DMatrix<Complex64>, eig: &Eigen) -> f64 {
        // max_k |A v_k - lambda_k v_k|
        let mut worst = 0.0f64;
        for k in 0..a.nrows() {
            let v = eig.vectors.column(k).into_owned();
            let r = a * &v - &v * eig.values[k];
            worst = worst.max(r.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        worst
    }

    #[test]
    fn diagonal_matrix() {
        let mut a = DMatrix::zeros(3, 3);
        a[(0, 0)] = Complex64::new(1.0, 2.0);
        a[(1, 1)] = Complex64::new(-0.5, 0.0);
        a[(2, 2)] = Complex64::new(0.0, -3.0);
        let eig = eigendecompose(&a).unwrap();
        let mut got: Vec<Complex64> = eig.values.iter().copied().collect();
        got.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        assert!((got[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-14);
        assert!(residual(&a, &eig) < 1e-13);
    }

    #[test]
    fn rotation_block_has_imaginary_pair() {
        // [[0, 1], [-1, 0]] has eigenvalues +-i.
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let eig = eigendecompose(&a).unwrap();
        let mut im: Vec<f64> = eig.values.iter().map(|l| l.im).collect();
        im.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((im[0] + 1.0).abs() < 1e-14);
        assert!((im[1] - 1.0).abs() < 1e-14);
        assert!(residual(&a, &eig) < 1e-13);
    }

    #[test]
    fn repeated_eigenvalue_diagonalizable() {
        // Similarity transform of diag(2, 2, 5): eigenvectors must stay
        // independent despite the repeated eigenvalue.
        let s = DMatrix::from_row_slice(
            3,
            3,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, -1.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(5.0, 0.0),
        ]));
        let a = &s * d * s.clone().try_inverse().unwrap();
        let eig = eigendecompose(&a).unwrap();
        assert!(residual(&a, &eig) < 1e-10);
        let p = eig.vectors.clone();
        let cond = crate::linalg::cond_inf(&p).expect("eigenvector matrix invertible");
        assert!(cond < 1e6, "cond = {cond}");
    }

    #[test]
    fn random_matrices_reconstruct() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for n in [2usize, 4, 8, 16] {
            for _ in 0..5 {
                let a = DMatrix::from_fn(n, n, |_, _| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                });
                let eig = eigendecompose(&a).unwrap();
                let p = &eig.vectors;
                let pinv = p.clone().try_inverse().expect("invertible eigenbasis");
                let rebuilt = p * DMatrix::from_diagonal(&eig.values) * pinv;
                let err = max_abs(&(&rebuilt - &a)) / max_abs(&a).max(1.0);
                assert!(err < 1e-10, "n={n} reconstruction error {err}");
            }
        }
    }

    #[test]
    fn identity_eigenvectors_are_canonical() {
        let eig = eigendecompose(&identity(4)).unwrap();
        for k in 0..4 {
            assert!((eig.values[k] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!(residual(&identity(4), &eig) < 1e-14);
    }
}
