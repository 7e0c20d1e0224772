//! Diagonalization of the closed block and the delay-propagator elements
//! `f_ik(tau) = (exp(M tau))_ik`.
//!
//! The decomposition route `P exp(L tau) P^-1` is cross-validated by an
//! adaptive integrator that shares nothing with the eigensolver. If the
//! eigenbasis is too ill-conditioned to trust, the transfer matrix silently
//! switches to scaling-and-squaring; the flag is exposed so run manifests
//! can record which route produced the data.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{build_block8, GeneratorKind, GeneratorMatrix};
use crate::linalg;
use crate::ode;
use crate::params::SystemParams;
use crate::tolerances;

/// Eigenvalues, eigenbasis, and its inverse for the closed block.
#[derive(Debug, Clone)]
pub struct PropagatorDecomposition {
    eigenvalues: DVector<Complex64>,
    basis: DMatrix<Complex64>,
    basis_inv: DMatrix<Complex64>,
    matrix: DMatrix<Complex64>,
    residual: f64,
    condition: f64,
    fallback: bool,
    params: SystemParams,
}

impl PropagatorDecomposition {
    pub fn eigenvalues(&self) -> &DVector<Complex64> {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &DMatrix<Complex64> {
        &self.basis_inv
    }

    /// Relative reconstruction residual `max|P L P^-1 - M| / max(1, max|M|)`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Infinity-norm condition number of the eigenbasis.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// True when `transfer` uses scaling-and-squaring instead of the
    /// eigenbasis.
    pub fn uses_fallback(&self) -> bool {
        self.fallback
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// Number of stationary modes (eigenvalues with negligible modulus).
    pub fn zero_mode_count(&self) -> usize {
        self.eigenvalues.iter().filter(|l| l.norm() <= tolerances::ZERO_MODE_ABS).count()
    }

    /// The transfer matrix `f(tau)` for a delay in units of `1/gamma0`.
    pub fn transfer(&self, tau: f64) -> Result<DMatrix<Complex64>> {
        if tau < 0.0 {
            return Err(Error::NegativeTau(tau));
        }
        let t_abs = tau / self.params.gamma0();
        if self.fallback {
            return Ok(linalg::expm(&(&self.matrix * Complex64::new(t_abs, 0.0))));
        }
        let phases = DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|l| (l * Complex64::new(t_abs, 0.0)).exp()),
        );
        Ok(&self.basis * DMatrix::from_diagonal(&phases) * &self.basis_inv)
    }

    /// Single element `f_ik(tau)` with the 1-based index convention of the
    /// frozen slot ordering.
    pub fn transfer_element(&self, i: usize, k: usize, tau: f64) -> Result<Complex64> {
        if !(1..=8).contains(&i) {
            return Err(Error::SlotOutOfRange(i));
        }
        if !(1..=8).contains(&k) {
            return Err(Error::SlotOutOfRange(k));
        }
        Ok(self.transfer(tau)?[(i - 1, k - 1)])
    }
}

/// Diagonalize the closed 8x8 block.
pub fn decompose(generator: &GeneratorMatrix) -> Result<PropagatorDecomposition> {
    assert_eq!(generator.kind(), GeneratorKind::Block8, "decompose expects the 8x8 block");
    let m = generator.matrix().clone();
    let eig = linalg::eigendecompose(&m)?;
    let scale = linalg::max_abs(&m).max(1.0);

    let (basis_inv, condition) = match eig.vectors.clone().try_inverse() {
        Some(inv) => {
            let cond = linalg::norm_inf(&eig.vectors) * linalg::norm_inf(&inv);
            (inv, cond)
        }
        None => (DMatrix::zeros(m.nrows(), m.ncols()), f64::INFINITY),
    };
    let residual = if condition.is_finite() {
        let rebuilt = &eig.vectors * DMatrix::from_diagonal(&eig.values) * &basis_inv;
        linalg::max_abs(&(&rebuilt - &m)) / scale
    } else {
        f64::INFINITY
    };
    let fallback =
        condition > tolerances::EIG_FALLBACK_COND || residual > tolerances::EIG_RESIDUAL_REL;

    Ok(PropagatorDecomposition {
        eigenvalues: eig.values,
        basis: eig.vectors,
        basis_inv,
        matrix: m,
        residual,
        condition,
        fallback,
        params: *generator.params(),
    })
}

/// Propagate a state through the same generator with the adaptive
/// integrator; the independent check on `transfer`.
pub fn oracle_propagate(
    generator: &GeneratorMatrix,
    v0: &DVector<Complex64>,
    tau: f64,
) -> Result<DVector<Complex64>> {
    if tau < 0.0 {
        return Err(Error::NegativeTau(tau));
    }
    let t_abs = tau / generator.params().gamma0();
    ode::propagate(generator.matrix(), v0, t_abs, ode::AdaptiveOptions::default())
}

/// Same, returning states at every delay of an increasing grid.
pub fn oracle_propagate_path(
    generator: &GeneratorMatrix,
    v0: &DVector<Complex64>,
    taus: &[f64],
) -> Result<Vec<DVector<Complex64>>> {
    let gamma0 = generator.params().gamma0();
    let abs: Vec<f64> = taus.iter().map(|t| t / gamma0).collect();
    ode::propagate_path(generator.matrix(), v0, &abs, ode::AdaptiveOptions::default())
}

/// One eigenvalue in a report, with the tiny-imaginary clamp applied.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReportedEigenvalue {
    pub re: f64,
    pub im: f64,
}

/// Canonically sorted eigenvalue list for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub params: SystemParams,
    pub eigenvalues: Vec<ReportedEigenvalue>,
    pub residual: f64,
    pub condition: f64,
    pub used_fallback: bool,
}

/// Sort key: descending |Im|, then descending Re, then ascending Im, which
/// places conjugate pairs adjacently with the negative-imaginary member
/// first.
pub fn canonical_sort(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        b.im.abs()
            .partial_cmp(&a.im.abs())
            .unwrap()
            .then(b.re.partial_cmp(&a.re).unwrap())
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Build, decompose, clamp, and sort.
pub fn report_eigenvalues(params: &SystemParams) -> Result<EigenReport> {
    let generator = build_block8(params);
    let decomp = decompose(&generator)?;
    let clamp = tolerances::CLAMP_IMAG_REL * linalg::max_abs(generator.matrix());
    let mut values: Vec<Complex64> = decomp
        .eigenvalues
        .iter()
        .map(|l| if l.im.abs() <= clamp { Complex64::new(l.re, 0.0) } else { *l })
        .collect();
    canonical_sort(&mut values);
    Ok(EigenReport {
        params: *params,
        eigenvalues: values.iter().map(|l| ReportedEigenvalue { re: l.re, im: l.im }).collect(),
        residual: decomp.residual,
        condition: decomp.condition,
        used_fallback: decomp.fallback,
    })
}

impl EigenReport {
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().map(|v| Complex64::new(v.re, v.im)).collect()
    }

    /// Asserts the conjugate-pair structure expected for a real drive.
    pub fn conjugate_pairs_ok(&self) -> bool {
        let values = self.values();
        let mut unmatched: Vec<Complex64> =
            values.iter().filter(|l| l.im != 0.0).copied().collect();
        while let Some(l) = unmatched.pop() {
            let Some(pos) =
                unmatched.iter().position(|m| (m - l.conj()).norm() <= tolerances::CONJUGATE_PAIR)
            else {
                return false;
            };
            unmatched.remove(pos);
        }
        true
    }
}

/// Outcome of a multiset comparison: each reference value paired with the
/// nearest remaining computed value.
#[derive(Debug, Clone, Serialize)]
pub struct MultisetMatch {
    pub pairs: Vec<MatchedPair>,
    pub max_delta: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MatchedPair {
    pub reference: ReportedEigenvalue,
    pub computed: ReportedEigenvalue,
    pub delta: f64,
}

/// Pair reference and computed multisets by minimal distance.
pub fn match_multiset(computed: &[Complex64], reference: &[Complex64]) -> MultisetMatch {
    let mut remaining: Vec<Complex64> = computed.to_vec();
    let mut pairs = Vec::with_capacity(reference.len());
    let mut max_delta = 0.0f64;
    for &r in reference {
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, c)| (i, (c - r).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("computed set at least as large as reference");
        let c = remaining.remove(idx);
        let delta = (c - r).norm();
        max_delta = max_delta.max(delta);
        pairs.push(MatchedPair {
            reference: ReportedEigenvalue { re: r.re, im: r.im },
            computed: ReportedEigenvalue { re: c.re, im: c.im },
            delta,
        });
    }
    MultisetMatch { pairs, max_delta }
}

/// Reference eigenvalue sets of the closed block (base decay scale 1).
pub mod reference {
    use num_complex::Complex64;

    /// Drive 0.5, reproduced at detuning 0.5.
    pub const DRIVE_05: [(f64, f64); 8] = [
        (-0.349797, -1.10904),
        (-0.349797, 1.10904),
        (-0.215794, -1.09726),
        (-0.215794, 1.09726),
        (-0.300406, 0.0),
        (-0.165314, 0.0),
        (-0.403098, 0.0),
        (0.0, 0.0),
    ];

    /// Drive 3.0 at zero detuning.
    pub const DRIVE_30: [(f64, f64); 8] = [
        (-0.375000, 5.99870),
        (-0.375000, -5.99870),
        (-0.208269, 5.99522),
        (-0.208269, -5.99522),
        (-0.250000, 0.0),
        (-0.250000, 0.0),
        (-0.333462, 0.0),
        (0.0, 0.0),
    ];

    pub fn drive_05() -> Vec<Complex64> {
        DRIVE_05.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }

    pub fn drive_30() -> Vec<Complex64> {
        DRIVE_30.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }

    /// Monic cubic satisfied by the real non-zero symmetric-sector
    /// eigenvalue at drive 0.5, detuning 0.5: coefficients of
    /// `l^3 + a l^2 + b l + c`.
    pub const SYMMETRIC_CUBIC_05_05: (f64, f64, f64) = (1.0, 1.5625, 0.40625);
}

/// Closed form of the strongly driven symmetric-sector pair at zero
/// detuning: `(-3 Gamma +- sqrt(Gamma^2 - 16 |W|^2)) / 2`.
pub fn symmetric_pair_closed_form(params: &SystemParams) -> (Complex64, Complex64) {
    let gamma = params.rates().gamma_total;
    let w2 = params.rabi_abs().norm_sqr();
    let disc = Complex64::new(gamma * gamma - 16.0 * w2, 0.0).sqrt();
    let base = Complex64::new(-1.5 * gamma, 0.0);
    let half = Complex64::new(0.5, 0.0);
    (base + disc * half, base - disc * half)
}
