//! Simulator for a linearly driven four-level atom on a j=1/2 to j=1/2
//! transition: stationary states, eigenstructure of the closed dynamical
//! block, and two-time photon-photon correlations of the linearly polarized
//! fluorescence with and without the vacuum-induced interference between
//! the two decay channels.
//!
//! The four levels are two degenerate excited states (1, 2) over two
//! degenerate ground states (3, 4). A field linearly polarized along z
//! drives the antiparallel dipoles 1-3 and 2-4; circularly polarized decay
//! connects 1-4 and 2-3. All rates derive from a single scale `gamma0` and
//! every public quantity is expressed in units of it.
//!
//! ```
//! use picorr::{correlation_series, steady_analytic, SystemParams, TauGrid, UnitMode};
//!
//! let params = SystemParams::reduced(0.5, 0.0)?;
//! assert!((steady_analytic(&params).rho11() - 2.0 / 9.0).abs() < 1e-14);
//!
//! let grid = TauGrid::span(20.0, 0.02)?;
//! let series = correlation_series(&params, &grid, &UnitMode::Reduced)?;
//! let g2 = series.g2_vic_normalized.as_ref().unwrap();
//! assert!(g2[0].abs() < 1e-12);          // antibunched at zero delay
//! assert!(g2.iter().any(|&v| v > 1.0));  // nonclassical overshoot later
//! # Ok::<(), picorr::Error>(())
//! ```

pub mod basis;
pub mod correlations;
pub mod error;
pub mod generator;
pub mod linalg;
pub mod ode;
pub mod params;
pub mod propagator;
pub mod steady;
pub mod tolerances;

pub use correlations::{
    asymptote_report, big_f, correlation_series, g2_normalized, g2_novic, g2_vic, intensity_pi,
    pathway_probabilities, AsymptoteReport, CorrelationEngine, CorrelationSeries, PathwaySeries,
    PiIntensity, TauGrid,
};
pub use error::{Error, Result};
pub use generator::{build_block8, build_full16, GeneratorKind, GeneratorMatrix};
pub use params::{derive_rates, DerivedRates, GeometryPrefactors, SystemParams, UnitMode};
pub use propagator::{
    canonical_sort, decompose, match_multiset, oracle_propagate, oracle_propagate_path,
    report_eigenvalues, symmetric_pair_closed_form, EigenReport, MultisetMatch,
    PropagatorDecomposition,
};
pub use steady::{steady_analytic, steady_numeric, steady_numeric_vector, SteadyState};

/// Re-exported scalar types used throughout the public API.
pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;
