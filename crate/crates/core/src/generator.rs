//! Rotating-frame generators of the dissipative dynamics.
//!
//! `block8` builds the closed 8x8 block that couples the populations to the
//! linear-transition coherences; `full16` extends it with the remaining
//! coherence components, where the interference switch enters. Ground-state
//! feeding carries the full channel rates `2*gamma_sigma` and `2*gamma_pi`,
//! which is what conserves the population sum and produces the stationary
//! zero mode.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::basis::{self, DIM16, DIM8};
use crate::error::{Error, Result};
use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Block8,
    Full16,
}

/// A dense generator matrix together with the parameters it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    kind: GeneratorKind,
    matrix: DMatrix<Complex64>,
    params: SystemParams,
}

impl GeneratorMatrix {
    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// Time derivative `G * state`.
    pub fn rhs(&self, state: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if state.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: state.len() });
        }
        Ok(&self.matrix * state)
    }
}

/// The closed 8x8 block in the frozen slot ordering.
pub fn build_block8(params: &SystemParams) -> GeneratorMatrix {
    let mut m = DMatrix::zeros(DIM8, DIM8);
    fill_block8(&mut m, params);
    GeneratorMatrix { kind: GeneratorKind::Block8, matrix: m, params: *params }
}

/// The full 16x16 generator; the interference terms appear only in the
/// ground-coherence rows, so the leading 8x8 block is independent of them.
pub fn build_full16(params: &SystemParams) -> GeneratorMatrix {
    let mut m = DMatrix::zeros(DIM16, DIM16);
    fill_block8(&mut m, params);
    fill_complement(&mut m, params);
    GeneratorMatrix { kind: GeneratorKind::Full16, matrix: m, params: *params }
}

fn fill_block8(m: &mut DMatrix<Complex64>, params: &SystemParams) {
    use basis::slot::*;
    let i = Complex64::i();
    let w = params.rabi_abs();
    let wc = w.conj();
    let delta = params.detuning_abs();
    let rates = params.rates();
    let cap = rates.gamma_total;
    let feed_sigma = Complex64::new(2.0 * rates.gamma_sigma, 0.0);
    let feed_pi = Complex64::new(2.0 * rates.gamma_pi, 0.0);
    let decay_pop = Complex64::new(-2.0 * cap, 0.0);
    let decay_coh_minus = Complex64::new(-cap, -delta); // -(Gamma + i Delta)
    let decay_coh_plus = Complex64::new(-cap, delta); // -(Gamma - i Delta)

    // r11' = i W* r13 - i W r31 - 2 Gamma r11
    m[(RHO11, RHO13)] = i * wc;
    m[(RHO11, RHO31)] = -i * w;
    m[(RHO11, RHO11)] = decay_pop;
    // r33' = i W r31 - i W* r13 + 2 gs r22 + 2 gp r11
    m[(RHO33, RHO31)] = i * w;
    m[(RHO33, RHO13)] = -i * wc;
    m[(RHO33, RHO22)] = feed_sigma;
    m[(RHO33, RHO11)] = feed_pi;
    // r13' = -(Gamma + i Delta) r13 + i W (r11 - r33)
    m[(RHO13, RHO13)] = decay_coh_minus;
    m[(RHO13, RHO11)] = i * w;
    m[(RHO13, RHO33)] = -i * w;
    // r31' = -(Gamma - i Delta) r31 - i W* (r11 - r33)
    m[(RHO31, RHO31)] = decay_coh_plus;
    m[(RHO31, RHO11)] = -i * wc;
    m[(RHO31, RHO33)] = i * wc;
    // r22' = i W r42 - i W* r24 - 2 Gamma r22
    m[(RHO22, RHO42)] = i * w;
    m[(RHO22, RHO24)] = -i * wc;
    m[(RHO22, RHO22)] = decay_pop;
    // r44' = i W* r24 - i W r42 + 2 gs r11 + 2 gp r22
    m[(RHO44, RHO24)] = i * wc;
    m[(RHO44, RHO42)] = -i * w;
    m[(RHO44, RHO11)] = feed_sigma;
    m[(RHO44, RHO22)] = feed_pi;
    // r24' = -(Gamma + i Delta) r24 - i W (r22 - r44)
    m[(RHO24, RHO24)] = decay_coh_minus;
    m[(RHO24, RHO22)] = -i * w;
    m[(RHO24, RHO44)] = i * w;
    // r42' = -(Gamma - i Delta) r42 + i W* (r22 - r44)
    m[(RHO42, RHO42)] = decay_coh_plus;
    m[(RHO42, RHO22)] = i * wc;
    m[(RHO42, RHO44)] = -i * wc;
}

fn fill_complement(m: &mut DMatrix<Complex64>, params: &SystemParams) {
    use basis::slot::*;
    let i = Complex64::i();
    let w = params.rabi_abs();
    let wc = w.conj();
    let delta = params.detuning_abs();
    let rates = params.rates();
    let cap = rates.gamma_total;
    let vic = Complex64::new(-rates.gamma_pi * params.q(), 0.0);
    let decay_pop = Complex64::new(-2.0 * cap, 0.0);
    let decay_coh_minus = Complex64::new(-cap, -delta);

    // r12' = -i W r32 - i W* r14 - 2 Gamma r12
    m[(RHO12, RHO32)] = -i * w;
    m[(RHO12, RHO14)] = -i * wc;
    m[(RHO12, RHO12)] = decay_pop;
    // r14' = -(Gamma + i Delta) r14 - i W r12 - i W r34
    m[(RHO14, RHO14)] = decay_coh_minus;
    m[(RHO14, RHO12)] = -i * w;
    m[(RHO14, RHO34)] = -i * w;
    // r23' = -(Gamma + i Delta) r23 + i W r21 + i W r43
    m[(RHO23, RHO23)] = decay_coh_minus;
    m[(RHO23, RHO21)] = i * w;
    m[(RHO23, RHO43)] = i * w;
    // r34' = -i W r32 - i W* r14 - gp q r12
    m[(RHO34, RHO32)] = -i * w;
    m[(RHO34, RHO14)] = -i * wc;
    m[(RHO34, RHO12)] = vic;
    // Conjugate rows: the r_ji' row is the conjugate of the r_ij' row with
    // every source slot replaced by its conjugate slot.
    for &(row, src) in &[(RHO21, RHO12), (RHO41, RHO14), (RHO32, RHO23), (RHO43, RHO34)] {
        for col in 0..DIM16 {
            let v = m[(src, col)];
            if v != Complex64::ZERO {
                m[(row, basis::conjugate_slot(col))] = v.conj();
            }
        }
    }
}
