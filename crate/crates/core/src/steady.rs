//! Driven steady state, computed two independent ways: the closed form and
//! the null space of the full generator.
//!
//! The stationary state has equal excited populations, equal ground
//! populations, opposite linear-transition coherences, and no cross
//! coherences; the interference switch does not enter it at all.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::basis::{self, slot, DIM16, DIM8};
use crate::error::{Error, Result};
use crate::generator::{GeneratorKind, GeneratorMatrix};
use crate::params::SystemParams;
use crate::tolerances;

/// Stationary state; the symmetry relations are part of the type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    rho11: f64,
    rho33: f64,
    rho13: Complex64,
}

impl SteadyState {
    /// Excited population (either of the two).
    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho22(&self) -> f64 {
        self.rho11
    }

    /// Ground population (either of the two).
    pub fn rho33(&self) -> f64 {
        self.rho33
    }

    pub fn rho44(&self) -> f64 {
        self.rho33
    }

    pub fn rho13(&self) -> Complex64 {
        self.rho13
    }

    pub fn rho24(&self) -> Complex64 {
        -self.rho13
    }

    pub fn population_sum(&self) -> f64 {
        2.0 * self.rho11 + 2.0 * self.rho33
    }

    /// The state in the closed-block ordering.
    pub fn vector8(&self) -> DVector<Complex64> {
        let mut v = DVector::zeros(DIM8);
        self.fill_block(&mut v);
        v
    }

    /// The state in the full 16-component ordering (cross coherences zero).
    pub fn vector16(&self) -> DVector<Complex64> {
        let mut v = DVector::zeros(DIM16);
        self.fill_block(&mut v);
        v
    }

    fn fill_block(&self, v: &mut DVector<Complex64>) {
        v[slot::RHO11] = Complex64::new(self.rho11, 0.0);
        v[slot::RHO22] = Complex64::new(self.rho11, 0.0);
        v[slot::RHO33] = Complex64::new(self.rho33, 0.0);
        v[slot::RHO44] = Complex64::new(self.rho33, 0.0);
        v[slot::RHO13] = self.rho13;
        v[slot::RHO31] = self.rho13.conj();
        v[slot::RHO24] = -self.rho13;
        v[slot::RHO42] = -self.rho13.conj();
    }

    /// The state as a 4x4 density matrix.
    pub fn density_matrix(&self) -> DMatrix<Complex64> {
        basis::vector_to_density(&self.vector16())
    }
}

/// Closed-form steady state. With `D = 2|W|^2 + Gamma^2 + Delta^2`:
/// `rho11 = |W|^2 / (2 D)`, `rho33 = (|W|^2 + Gamma^2 + Delta^2) / (2 D)`,
/// `rho13 = -(i W / (Gamma + i Delta)) (Gamma^2 + Delta^2) / (2 D)`.
/// Independent of the interference switch.
pub fn steady_analytic(params: &SystemParams) -> SteadyState {
    let w = params.rabi_abs();
    let gamma = params.rates().gamma_total;
    let delta = params.detuning_abs();
    let w2 = w.norm_sqr();
    let g2d2 = gamma * gamma + delta * delta;
    let denom = 2.0 * w2 + g2d2;
    let rho11 = 0.5 * w2 / denom;
    let rho33 = 0.5 * (w2 + g2d2) / denom;
    let rho13 = -(Complex64::i() * w / Complex64::new(gamma, delta)) * (0.5 * g2d2 / denom);
    SteadyState { rho11, rho33, rho13 }
}

/// Raw kernel vector of the full generator, normalized to unit population
/// sum. Solved by replacing one population row with the trace functional.
pub fn steady_numeric_vector(generator: &GeneratorMatrix) -> Result<DVector<Complex64>> {
    assert_eq!(
        generator.kind(),
        GeneratorKind::Full16,
        "steady_numeric expects the full generator"
    );
    if generator.params().rabi_abs() == Complex64::new(0.0, 0.0) {
        // Undriven: both ground populations are stationary, kernel is 2-dim.
        return Err(Error::DegenerateKernel);
    }
    let g = generator.matrix();
    let n = g.nrows();

    let mut system = g.clone();
    let replaced_row = slot::RHO33;
    for c in 0..n {
        system[(replaced_row, c)] = Complex64::new(0.0, 0.0);
    }
    for &k in &basis::POPULATION_SLOTS {
        system[(replaced_row, k)] = Complex64::new(1.0, 0.0);
    }
    let mut rhs_vec = DVector::zeros(n);
    rhs_vec[replaced_row] = Complex64::new(1.0, 0.0);

    let lu = system.clone().lu();
    let mut v = lu.solve(&rhs_vec).ok_or(Error::DegenerateKernel)?;
    // One round of iterative refinement keeps the residual at rounding level.
    let correction = &rhs_vec - &system * &v;
    if let Some(delta_v) = lu.solve(&correction) {
        v += delta_v;
    }

    let residual = (g * &v).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !residual.is_finite()
        || residual > tolerances::STEADY_RESIDUAL * generator.params().gamma0().max(1.0)
    {
        return Err(Error::DegenerateKernel);
    }
    Ok(v)
}

/// Steady state from the generator null space, validated against the
/// structural symmetries of the stationary solution.
pub fn steady_numeric(generator: &GeneratorMatrix) -> Result<SteadyState> {
    let v = steady_numeric_vector(generator)?;
    let tol = tolerances::STEADY_MATCH;
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::NumericalValidation(format!("steady-state structure violated: {what}")))
        }
    };
    check((v[slot::RHO11] - v[slot::RHO22]).norm() < tol, "rho11 = rho22")?;
    check((v[slot::RHO33] - v[slot::RHO44]).norm() < tol, "rho33 = rho44")?;
    check((v[slot::RHO13] + v[slot::RHO24]).norm() < tol, "rho13 = -rho24")?;
    check(v[slot::RHO11].im.abs() < tol && v[slot::RHO33].im.abs() < tol, "real populations")?;
    for k in DIM8..DIM16 {
        check(v[k].norm() < tol, "vanishing cross coherences")?;
    }
    Ok(SteadyState { rho11: v[slot::RHO11].re, rho33: v[slot::RHO33].re, rho13: v[slot::RHO13] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::build_full16;
    use approx::assert_abs_diff_eq;

    fn params(rabi: f64, detuning: f64) -> SystemParams {
        SystemParams::reduced(rabi, detuning).unwrap()
    }

    #[test]
    fn closed_form_at_reference_point() {
        let s = steady_analytic(&params(0.5, 0.0));
        assert_abs_diff_eq!(s.rho11(), 2.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.rho33(), 5.0 / 18.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.rho13().re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.rho13().im, -1.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.population_sum(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn undriven_atom_sits_in_the_ground_manifold() {
        let s = steady_analytic(&params(0.0, 0.0));
        assert_eq!(s.rho11(), 0.0);
        assert_abs_diff_eq!(s.rho33(), 0.5, epsilon = 1e-15);
        assert_eq!(s.rho13(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn saturation_limit_equalizes_populations() {
        let s = steady_analytic(&params(1e6, 0.3));
        assert_abs_diff_eq!(s.rho11(), 0.25, epsilon = 1e-11);
        assert_abs_diff_eq!(s.rho33(), 0.25, epsilon = 1e-11);
    }

    #[test]
    fn coherence_is_imaginary_on_resonance() {
        for omega in [0.1, 0.7, 2.0] {
            let s = steady_analytic(&params(omega, 0.0));
            assert_abs_diff_eq!(s.rho13().re, 0.0, epsilon = 1e-15);
            assert!(s.rho13().im < 0.0);
        }
    }

    #[test]
    fn numeric_matches_analytic_on_a_grid() {
        for omega in [0.1, 0.5, 1.0, 3.0, 10.0] {
            for delta in [0.0, 0.5, 2.0] {
                let p = params(omega, delta);
                let numeric = steady_numeric_vector(&build_full16(&p)).unwrap();
                let analytic = steady_analytic(&p).vector16();
                for k in 0..DIM16 {
                    assert!(
                        (numeric[k] - analytic[k]).norm() < tolerances::STEADY_MATCH,
                        "omega={omega} delta={delta} slot {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_vector_is_q_invariant() {
        let p = params(0.5, 0.5);
        let with_q = steady_numeric_vector(&build_full16(&p.with_vic(true))).unwrap();
        let without_q = steady_numeric_vector(&build_full16(&p.with_vic(false))).unwrap();
        for k in 0..DIM16 {
            assert!((with_q[k] - without_q[k]).norm() < tolerances::STEADY_Q_INVARIANCE);
        }
    }

    #[test]
    fn population_sum_is_normalized() {
        let s = steady_numeric(&build_full16(&params(0.5, 0.5))).unwrap();
        assert_abs_diff_eq!(s.population_sum(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_drive_kernel_is_degenerate() {
        assert!(matches!(
            steady_numeric(&build_full16(&params(0.0, 0.0))),
            Err(Error::DegenerateKernel)
        ));
    }

    #[test]
    fn derivative_of_steady_state_vanishes() {
        let p = params(1.2, 0.4);
        let g = build_full16(&p);
        let v = steady_analytic(&p).vector16();
        let dv = g.rhs(&v).unwrap();
        for z in dv.iter() {
            assert!(z.norm() < 1e-12);
        }
    }
}
