//! Linearly polarized fluorescence intensity and two-time photon-photon
//! correlations, with and without the spontaneous-emission interference
//! between the two linear transitions.
//!
//! Everything is assembled from the closed-block transfer matrix and the
//! stationary state. With interference the correlator weights the combined
//! excited-state return probabilities `F_k = f_1k + f_5k` started from both
//! ground slots; without it, only the per-transition diagonal elements
//! `f12` and `f56` survive. The regression weights are computed from the
//! operator algebra rather than assumed, so the cancellation of the
//! coherence-slot contributions is something the code demonstrates.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::basis::{self, slot, DIM8};
use crate::error::{Error, Result};
use crate::generator::build_block8;
use crate::params::{SystemParams, UnitMode};
use crate::propagator::{decompose, PropagatorDecomposition};
use crate::steady::{steady_analytic, SteadyState};
use crate::tolerances;

/// Stationary intensity on the linear transitions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PiIntensity {
    /// `|W|^2 / (2|W|^2 + Gamma^2 + Delta^2)`, twice the excited population.
    pub reduced: f64,
    /// Reduced value times the geometric prefactor, when in physical mode.
    pub physical: Option<f64>,
}

/// Stationary linear-transition intensity; independent of the interference
/// switch.
pub fn intensity_pi(params: &SystemParams, units: &UnitMode) -> PiIntensity {
    let reduced = 2.0 * steady_analytic(params).rho11();
    let physical = match units {
        UnitMode::Reduced => None,
        UnitMode::Physical(_) => Some(units.intensity_prefactor() * reduced),
    };
    PiIntensity { reduced, physical }
}

/// Uniform delay grid in units of `1/gamma0`: points `0, dt, ..., steps*dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauGrid {
    dt: f64,
    steps: usize,
}

impl TauGrid {
    /// Largest accepted grid; far beyond anything useful here.
    pub const MAX_POINTS: usize = 50_000_000;

    pub fn new(dt: f64, steps: usize) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidParameter(format!("grid step must be positive, got {dt}")));
        }
        if steps >= Self::MAX_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid of {steps} steps exceeds the {} point limit",
                Self::MAX_POINTS
            )));
        }
        Ok(Self { dt, steps })
    }

    /// Grid covering `[0, tau_max]` with the given step.
    pub fn span(tau_max: f64, dt: f64) -> Result<Self> {
        if !tau_max.is_finite() || tau_max < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "span must be non-negative, got {tau_max}"
            )));
        }
        let steps = (tau_max / dt + 1e-9).floor() as usize;
        Self::new(dt, steps)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(move |i| i as f64 * self.dt)
    }
}

impl Default for TauGrid {
    fn default() -> Self {
        TauGrid::span(tolerances::DEFAULT_TAU_MAX, tolerances::DEFAULT_TAU_STEP)
            .expect("default grid is valid")
    }
}

/// The detection operator pair for the interference case:
/// `B = |3><1| - |4><2|`.
fn lowering_operator() -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut b = DMatrix::zeros(4, 4);
    b[(2, 0)] = one; // |3><1|
    b[(3, 1)] = -one; // -|4><2|
    b
}

/// Regression weights `w_k = Tr[rho_ss B^H X_k B]` for the eight block
/// slots. Only the two ground-population slots survive; the rest vanish by
/// the operator algebra, which the tests assert numerically.
pub fn regression_weights(steady: &SteadyState) -> [Complex64; DIM8] {
    let rho = steady.density_matrix();
    let b = lowering_operator();
    let b_dag = b.adjoint();
    let mut weights = [Complex64::new(0.0, 0.0); DIM8];
    for (k, w) in weights.iter_mut().enumerate() {
        let op = basis::slot_operator(k);
        *w = (&rho * &b_dag * &op * &b).trace();
    }
    weights
}

/// Per-transition weights for the no-interference sum: channel A uses
/// `|3><1|` alone, channel B uses `|4><2|` alone, and the correlator reads
/// the excited population of the same channel.
pub fn channel_weights(steady: &SteadyState) -> ([Complex64; DIM8], [Complex64; DIM8]) {
    let rho = steady.density_matrix();
    let one = Complex64::new(1.0, 0.0);
    let mut b_a = DMatrix::zeros(4, 4);
    b_a[(2, 0)] = one;
    let mut b_b = DMatrix::zeros(4, 4);
    b_b[(3, 1)] = one;
    let mut w_a = [Complex64::new(0.0, 0.0); DIM8];
    let mut w_b = [Complex64::new(0.0, 0.0); DIM8];
    for k in 0..DIM8 {
        let op = basis::slot_operator(k);
        w_a[k] = (&rho * b_a.adjoint() * &op * &b_a).trace();
        w_b[k] = (&rho * b_b.adjoint() * &op * &b_b).trace();
    }
    (w_a, w_b)
}

/// `F_k(tau) = f_1k + f_5k`: the combined weight for occupying either
/// excited state after delay `tau`, given initial slot `k` (1-based).
///
/// Real for population slots; an imaginary residue above the pinned bound
/// is a validation error.
pub fn big_f(decomp: &PropagatorDecomposition, tau: f64, k: usize) -> Result<f64> {
    if !(1..=DIM8).contains(&k) {
        return Err(Error::SlotOutOfRange(k));
    }
    let f = decomp.transfer(tau)?;
    let value = f[(slot::RHO11, k - 1)] + f[(slot::RHO22, k - 1)];
    real_part(value, "excited occupation sum")
}

fn real_part(value: Complex64, what: &str) -> Result<f64> {
    if value.im.abs() > tolerances::IMAG_RESIDUE * value.norm().max(1.0) {
        return Err(Error::NumericalValidation(format!(
            "{what} has imaginary residue {}",
            value.im
        )));
    }
    Ok(value.re)
}

/// Correlation columns over a delay grid, in the requested units.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationSeries {
    pub params: SystemParams,
    pub units: UnitMode,
    pub tau: Vec<f64>,
    /// Unnormalized correlation with interference.
    pub g2_vic: Vec<f64>,
    /// Unnormalized correlation without interference.
    pub g2_novic: Vec<f64>,
    /// Normalized correlation with interference; present for nonzero drive.
    pub g2_vic_normalized: Option<Vec<f64>>,
    /// Normalized correlation without interference.
    pub g2_novic_normalized: Option<Vec<f64>>,
}

/// Evaluates the correlation formulas over a grid from one decomposition.
pub struct CorrelationEngine {
    decomp: PropagatorDecomposition,
    steady: SteadyState,
    prefactor: f64,
}

impl CorrelationEngine {
    pub fn new(params: &SystemParams, units: &UnitMode) -> Result<Self> {
        let decomp = decompose(&build_block8(params))?;
        let steady = steady_analytic(params);
        Ok(Self { decomp, steady, prefactor: units.correlation_prefactor() })
    }

    pub fn decomposition(&self) -> &PropagatorDecomposition {
        &self.decomp
    }

    pub fn steady(&self) -> &SteadyState {
        &self.steady
    }

    /// `(F2 + F6, f12 + f56)` at one delay.
    fn transfer_sums(&self, tau: f64) -> Result<(f64, f64)> {
        let f = self.decomp.transfer(tau)?;
        let f2 = f[(slot::RHO11, slot::RHO33)] + f[(slot::RHO22, slot::RHO33)];
        let f6 = f[(slot::RHO11, slot::RHO44)] + f[(slot::RHO22, slot::RHO44)];
        let with = real_part(f2 + f6, "interference correlator")?;
        let f12 = f[(slot::RHO11, slot::RHO33)];
        let f56 = f[(slot::RHO22, slot::RHO44)];
        let without = real_part(f12 + f56, "per-transition correlator")?;
        Ok((with, without))
    }

    /// Unnormalized pair `(with interference, without)` at one delay.
    pub fn g2_pair(&self, tau: f64) -> Result<(f64, f64)> {
        let (with_sum, without_sum) = self.transfer_sums(tau)?;
        let excited = self.steady.rho11();
        Ok((self.prefactor * with_sum * excited, self.prefactor * without_sum * excited))
    }

    /// Normalized pair; requires nonzero drive.
    pub fn g2_normalized_pair(&self, tau: f64) -> Result<(f64, f64)> {
        let excited = self.steady.rho11();
        if excited == 0.0 {
            return Err(Error::UndefinedNormalization);
        }
        let (with_sum, without_sum) = self.transfer_sums(tau)?;
        Ok((with_sum / (4.0 * excited), without_sum / (2.0 * excited)))
    }
}

/// All four correlation columns over the grid. Normalized columns are
/// omitted for zero drive (where they are undefined).
pub fn correlation_series(
    params: &SystemParams,
    grid: &TauGrid,
    units: &UnitMode,
) -> Result<CorrelationSeries> {
    let engine = CorrelationEngine::new(params, units)?;
    let normalizable = engine.steady.rho11() > 0.0;
    let n = grid.len();
    let mut tau = Vec::with_capacity(n);
    let mut vic = Vec::with_capacity(n);
    let mut novic = Vec::with_capacity(n);
    let mut vic_norm = Vec::with_capacity(if normalizable { n } else { 0 });
    let mut novic_norm = Vec::with_capacity(if normalizable { n } else { 0 });
    for t in grid.points() {
        let (a, b) = engine.g2_pair(t)?;
        check_positive(a)?;
        check_positive(b)?;
        tau.push(t);
        vic.push(a);
        novic.push(b);
        if normalizable {
            let (na, nb) = engine.g2_normalized_pair(t)?;
            vic_norm.push(na);
            novic_norm.push(nb);
        }
    }
    Ok(CorrelationSeries {
        params: *params,
        units: *units,
        tau,
        g2_vic: vic,
        g2_novic: novic,
        g2_vic_normalized: normalizable.then_some(vic_norm),
        g2_novic_normalized: normalizable.then_some(novic_norm),
    })
}

fn check_positive(value: f64) -> Result<()> {
    if value < tolerances::POSITIVITY_SLACK {
        return Err(Error::NumericalValidation(format!(
            "correlation value {value} below the positivity slack"
        )));
    }
    Ok(())
}

/// Unnormalized correlation with interference over the grid.
pub fn g2_vic(params: &SystemParams, grid: &TauGrid, units: &UnitMode) -> Result<Vec<f64>> {
    Ok(correlation_series(params, grid, units)?.g2_vic)
}

/// Unnormalized correlation without interference over the grid.
pub fn g2_novic(params: &SystemParams, grid: &TauGrid, units: &UnitMode) -> Result<Vec<f64>> {
    Ok(correlation_series(params, grid, units)?.g2_novic)
}

/// Normalized correlation over the grid; `vic` selects the variant.
pub fn g2_normalized(params: &SystemParams, grid: &TauGrid, vic: bool) -> Result<Vec<f64>> {
    let series = correlation_series(params, grid, &UnitMode::Reduced)?;
    let column = if vic { series.g2_vic_normalized } else { series.g2_novic_normalized };
    column.ok_or(Error::UndefinedNormalization)
}

/// The two single-element transfer curves that expose the slow
/// cross-channel pathway: `f12` (stay in the driven channel) and `f52`
/// (cross over via a circularly polarized emission).
#[derive(Debug, Clone, Serialize)]
pub struct PathwaySeries {
    pub params: SystemParams,
    pub tau: Vec<f64>,
    pub f12: Vec<f64>,
    pub f52: Vec<f64>,
}

pub fn pathway_probabilities(params: &SystemParams, grid: &TauGrid) -> Result<PathwaySeries> {
    let decomp = decompose(&build_block8(params))?;
    let mut tau = Vec::with_capacity(grid.len());
    let mut f12 = Vec::with_capacity(grid.len());
    let mut f52 = Vec::with_capacity(grid.len());
    for t in grid.points() {
        let f = decomp.transfer(t)?;
        tau.push(t);
        f12.push(real_part(f[(slot::RHO11, slot::RHO33)], "f12")?);
        f52.push(real_part(f[(slot::RHO22, slot::RHO33)], "f52")?);
    }
    Ok(PathwaySeries { params: *params, tau, f12, f52 })
}

/// Large-delay diagnostics: closed-form limits, the alternative reading
/// without the second stationary-population factor, and values measured at
/// a finite checkpoint.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoteReport {
    pub params: SystemParams,
    pub tau_checkpoint: f64,
    /// `4 rho11^2`: the limit of the interference correlator.
    pub vic_limit: f64,
    /// `2 rho11^2`: the limit of the per-transition sum.
    pub novic_limit: f64,
    /// Exactly 2, the ratio of the two limits.
    pub limit_ratio: f64,
    /// `4 rho11`: the large-delay form quoted without the second
    /// population factor.
    pub vic_limit_unscaled: f64,
    /// `2 rho11`: same, without interference.
    pub novic_limit_unscaled: f64,
    pub measured_vic: f64,
    pub measured_novic: f64,
    pub measured_ratio: f64,
    pub measured_g2_vic: f64,
    pub measured_g2_novic: f64,
}

pub fn asymptote_report(params: &SystemParams, tau_checkpoint: f64) -> Result<AsymptoteReport> {
    let engine = CorrelationEngine::new(params, &UnitMode::Reduced)?;
    let rho11 = engine.steady().rho11();
    let (measured_vic, measured_novic) = engine.g2_pair(tau_checkpoint)?;
    let (measured_g2_vic, measured_g2_novic) = engine.g2_normalized_pair(tau_checkpoint)?;
    Ok(AsymptoteReport {
        params: *params,
        tau_checkpoint,
        vic_limit: 4.0 * rho11 * rho11,
        novic_limit: 2.0 * rho11 * rho11,
        limit_ratio: 2.0,
        vic_limit_unscaled: 4.0 * rho11,
        novic_limit_unscaled: 2.0 * rho11,
        measured_vic,
        measured_novic,
        measured_ratio: measured_vic / measured_novic,
        measured_g2_vic,
        measured_g2_novic,
    })
}
