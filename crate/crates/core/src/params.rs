//! Physical parameters, unit conventions, and derived decay rates.
//!
//! All quantities are expressed in units of the base decay scale `gamma0`:
//! the drive amplitude and detuning stored here are dimensionless multiples
//! of `gamma0`, and emitted series use delays in units of `1/gamma0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Drive and dissipation parameters of the four-level system.
///
/// Validated on construction; every other module consumes this by value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    gamma0: f64,
    rabi_re: f64,
    rabi_im: f64,
    detuning: f64,
    vic: bool,
}

impl SystemParams {
    /// `rabi` and `detuning` are in units of `gamma0`; `vic` switches the
    /// spontaneous-emission interference coupling on or off.
    pub fn new(gamma0: f64, rabi: Complex64, detuning: f64, vic: bool) -> Result<Self> {
        if !gamma0.is_finite() || gamma0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma0 must be positive and finite, got {gamma0}"
            )));
        }
        if !rabi.re.is_finite() || !rabi.im.is_finite() {
            return Err(Error::InvalidParameter(format!("rabi must be finite, got {rabi}")));
        }
        if !detuning.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "detuning must be finite, got {detuning}"
            )));
        }
        Ok(Self { gamma0, rabi_re: rabi.re, rabi_im: rabi.im, detuning, vic })
    }

    /// Real drive in reduced units (`gamma0 = 1`), interference on.
    pub fn reduced(rabi: f64, detuning: f64) -> Result<Self> {
        Self::new(1.0, Complex64::new(rabi, 0.0), detuning, true)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// Drive amplitude in units of `gamma0`.
    pub fn rabi(&self) -> Complex64 {
        Complex64::new(self.rabi_re, self.rabi_im)
    }

    /// Detuning in units of `gamma0`.
    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn vic(&self) -> bool {
        self.vic
    }

    /// Interference switch as the 0/1 factor it multiplies in the generator.
    pub fn q(&self) -> f64 {
        if self.vic {
            1.0
        } else {
            0.0
        }
    }

    pub fn with_vic(mut self, vic: bool) -> Self {
        self.vic = vic;
        self
    }

    /// Drive amplitude in absolute rate units.
    pub fn rabi_abs(&self) -> Complex64 {
        self.rabi() * self.gamma0
    }

    /// Detuning in absolute rate units.
    pub fn detuning_abs(&self) -> f64 {
        self.detuning * self.gamma0
    }

    pub fn rates(&self) -> DerivedRates {
        DerivedRates::from_gamma0(self.gamma0)
    }
}

/// Channel half-decay rates fixed by the dipole-moment ratios of the level
/// scheme: the full decays are `2*gamma_sigma = gamma0/3` on the circular
/// channels and `2*gamma_pi = gamma0/6` on the linear ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedRates {
    /// Circular-channel half rate, `gamma0/6`.
    pub gamma_sigma: f64,
    /// Linear-channel half rate, `gamma0/12`.
    pub gamma_pi: f64,
    /// Total half width `Gamma = gamma_sigma + gamma_pi = gamma0/4`.
    pub gamma_total: f64,
}

impl DerivedRates {
    fn from_gamma0(gamma0: f64) -> Self {
        let gamma_sigma = gamma0 / 6.0;
        let gamma_pi = gamma0 / 12.0;
        Self { gamma_sigma, gamma_pi, gamma_total: gamma_sigma + gamma_pi }
    }
}

/// Decay rates for a validated parameter set.
pub fn derive_rates(params: &SystemParams) -> DerivedRates {
    params.rates()
}

/// Geometric and atomic constants that only enter as overall prefactors.
///
/// With the defaults (everything 1, speed of light 1) the intensity carries
/// a factor 1/6 and the two-time correlation a factor 1/36; reduced-unit
/// mode replaces both with exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryPrefactors {
    pub reduced_dipole: f64,
    pub frequency: f64,
    pub distance: f64,
}

impl Default for GeometryPrefactors {
    fn default() -> Self {
        Self { reduced_dipole: 1.0, frequency: 1.0, distance: 1.0 }
    }
}

impl GeometryPrefactors {
    /// `(w0/c)^4 |D|^2 / (6 r^2)`, with c = 1.
    pub fn intensity_prefactor(&self) -> f64 {
        self.frequency.powi(4) * self.reduced_dipole.powi(2) / (6.0 * self.distance.powi(2))
    }

    /// `(w0/c)^8 |D|^4 / (36 r^4)`, with c = 1.
    pub fn correlation_prefactor(&self) -> f64 {
        self.frequency.powi(8) * self.reduced_dipole.powi(4) / (36.0 * self.distance.powi(4))
    }
}

/// Output unit convention for intensities and correlations.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub enum UnitMode {
    /// Both prefactors are exactly 1.
    #[default]
    Reduced,
    /// Prefactors computed from the geometry.
    Physical(GeometryPrefactors),
}

impl UnitMode {
    pub fn intensity_prefactor(&self) -> f64 {
        match self {
            UnitMode::Reduced => 1.0,
            UnitMode::Physical(g) => g.intensity_prefactor(),
        }
    }

    pub fn correlation_prefactor(&self) -> f64 {
        match self {
            UnitMode::Reduced => 1.0,
            UnitMode::Physical(g) => g.correlation_prefactor(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn rates_at_unit_gamma0() {
        let p = SystemParams::reduced(0.5, 0.0).unwrap();
        let r = derive_rates(&p);
        assert_abs_diff_eq!(r.gamma_sigma, 1.0 / 6.0, epsilon = 0.0);
        assert_abs_diff_eq!(r.gamma_pi, 1.0 / 12.0, epsilon = 0.0);
        assert_abs_diff_eq!(r.gamma_total, 0.25, epsilon = 0.0);
    }

    #[test]
    fn rates_scale_linearly() {
        let p = SystemParams::new(2.0, Complex64::new(1.0, 0.0), 0.0, true).unwrap();
        let r = p.rates();
        assert_abs_diff_eq!(r.gamma_sigma, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.gamma_pi, 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.gamma_total, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn zero_gamma0_rejected() {
        assert!(SystemParams::new(0.0, Complex64::new(1.0, 0.0), 0.0, true).is_err());
        assert!(SystemParams::new(-1.0, Complex64::new(1.0, 0.0), 0.0, true).is_err());
        assert!(SystemParams::new(f64::NAN, Complex64::new(1.0, 0.0), 0.0, true).is_err());
    }

    #[test]
    fn non_finite_drive_rejected() {
        assert!(SystemParams::new(1.0, Complex64::new(f64::INFINITY, 0.0), 0.0, true).is_err());
        assert!(SystemParams::new(1.0, Complex64::new(0.0, 0.0), f64::NAN, true).is_err());
    }

    #[test]
    fn default_prefactors() {
        let g = GeometryPrefactors::default();
        assert_abs_diff_eq!(g.intensity_prefactor(), 1.0 / 6.0, epsilon = 1e-16);
        assert_abs_diff_eq!(g.correlation_prefactor(), 1.0 / 36.0, epsilon = 1e-16);
        assert_eq!(UnitMode::Reduced.intensity_prefactor(), 1.0);
        assert_eq!(UnitMode::Reduced.correlation_prefactor(), 1.0);
    }

    proptest! {
        #[test]
        fn total_is_channel_sum(gamma0 in 1e-6f64..1e6) {
            let p = SystemParams::new(gamma0, Complex64::new(0.3, 0.0), 0.1, true).unwrap();
            let r = p.rates();
            prop_assert!((r.gamma_total - (r.gamma_sigma + r.gamma_pi)).abs() == 0.0);
            prop_assert!((2.0 * r.gamma_sigma - gamma0 / 3.0).abs() <= 1e-15 * gamma0);
            prop_assert!((2.0 * r.gamma_pi - gamma0 / 6.0).abs() <= 1e-15 * gamma0);
        }
    }
}
